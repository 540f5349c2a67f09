#include "fbs/lnd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

#include "fbs/boxdim.hpp"
#include "fbs/errors.hpp"
#include "fbs/field_model.hpp"
#include "fbs/gaussian.hpp"
#include "fbs/quadrature.hpp"

namespace fbs {

namespace {

void require_nonempty(const std::vector<SpacePoint>& conditioning, const char* where) {
  if (conditioning.empty())
    throw std::invalid_argument(std::string(where) + ": empty conditioning set");
}

double min_axis_distance(double coord, std::size_t axis, const std::vector<SpacePoint>& pts) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& p : pts) m = std::min(m, std::abs(coord - p[axis]));
  return m;
}

}  // namespace

double sectorial_bound(const SpacePoint& u, const std::vector<SpacePoint>& conditioning,
                       const HurstVector& h) {
  require_nonempty(conditioning, "sectorial_bound");
  double sum = 0.0;
  for (std::size_t l = 0; l < h.n(); ++l)
    sum += pow_abs(min_axis_distance(u[l], l, conditioning), 2.0 * h[l]);
  return sum;
}

double increment_sectorial_bound(const SpacePoint& s, const SpacePoint& t,
                                 const std::vector<SpacePoint>& conditioning,
                                 const HurstVector& h) {
  require_nonempty(conditioning, "increment_sectorial_bound");
  double sum = 0.0;
  for (std::size_t l = 0; l < h.n(); ++l) {
    const double two_h = 2.0 * h[l];
    const double through = pow_abs(min_axis_distance(s[l], l, conditioning), two_h) +
                           pow_abs(min_axis_distance(t[l], l, conditioning), two_h);
    sum += std::min(through, pow_abs(s[l] - t[l], two_h));
  }
  return sum;
}

double anisotropic_bound(const SpacePoint& s, const SpacePoint& t,
                         const std::vector<SpacePoint>& conditioning, const HurstVector& h,
                         bool strong) {
  require_nonempty(conditioning, "anisotropic_bound");
  const std::size_t n = h.n();
  std::vector<double> radius(n), increment(n);
  double radius_sum = 0.0, increment_sum = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    const double r = min_axis_distance(s[l], l, conditioning) +
                     min_axis_distance(t[l], l, conditioning);
    radius[l] = pow_abs(std::min(r, 1.0), 2.0 * h[l]);
    increment[l] = pow_abs(s[l] - t[l], 2.0 * h[l]);
    radius_sum += radius[l];
    increment_sum += increment[l];
  }
  if (!strong) return increment_sum * radius_sum;
  double value = 0.0;
  for (std::size_t l = 0; l < n; ++l)
    value += std::min(radius[l], increment[l]) + radius[l] * (increment_sum - increment[l]);
  return value;
}

const char* bound_kind_name(BoundKind k) {
  switch (k) {
    case BoundKind::sectorial13: return "sectorial13";
    case BoundKind::increment21: return "increment21";
    case BoundKind::aniso22: return "aniso22";
    case BoundKind::strong23: return "strong23";
  }
  return "unknown";
}

BoundKind bound_kind_from_name(const std::string& name) {
  if (name == "sectorial13") return BoundKind::sectorial13;
  if (name == "increment21") return BoundKind::increment21;
  if (name == "aniso22") return BoundKind::aniso22;
  if (name == "strong23") return BoundKind::strong23;
  throw std::invalid_argument("unknown bound kind: " + name);
}

double LndReport::bound(BoundKind k) const {
  switch (k) {
    case BoundKind::sectorial13: return sectorial_13;
    case BoundKind::increment21: return increment_21;
    case BoundKind::aniso22: return aniso_22;
    case BoundKind::strong23: return strong_23;
  }
  return 0.0;
}

double LndReport::numerator(BoundKind k) const {
  return k == BoundKind::sectorial13 ? exact_var_point : exact_var;
}

RatioClass LndReport::ratio_class(BoundKind k) const {
  const bool bound_zero = bound(k) <= kRatioZeroTol;
  const bool var_zero = numerator(k) <= kRatioZeroTol;
  if (bound_zero && var_zero) return RatioClass::both_zero;
  if (bound_zero) return RatioClass::unbounded;
  return RatioClass::finite;
}

double LndReport::ratio(BoundKind k) const { return numerator(k) / bound(k); }

LndReport evaluate_lnd(const Configuration& c, const HurstVector& h) {
  c.validate(h.n());
  LndReport rep;
  rep.config = c;
  const LinearFunctional increment{{c.t, c.s}, {1.0, -1.0}};
  const LinearFunctional point{{c.t}, {1.0}};
  rep.exact_var = conditional_variance(increment, c.conditioning, h);
  rep.exact_var_point = conditional_variance(point, c.conditioning, h);
  rep.sectorial_13 = sectorial_bound(c.t, c.conditioning, h);
  rep.increment_21 = increment_sectorial_bound(c.s, c.t, c.conditioning, h);
  rep.aniso_22 = anisotropic_bound(c.s, c.t, c.conditioning, h, false);
  rep.strong_23 = anisotropic_bound(c.s, c.t, c.conditioning, h, true);
  return rep;
}

Configuration figure1_configuration() {
  Configuration c;
  c.s = {0.25, 0.75};
  c.t = {0.75, 0.75};
  c.conditioning = {{0.25, 0.25}, {0.75, 0.25}};
  c.epsilon = 0.1;
  return c;
}

namespace {

constexpr double kDomainMargin = 1e-12;
constexpr int kDescentLevels = 20;

Configuration sample_configuration(const ScanPolicy& policy, std::uint64_t index) {
  RandomStream rng(policy.seed, index, RandomStream::Purpose::scan_configs);
  const std::size_t dim = policy.h.n();
  const auto n = static_cast<std::size_t>(
      rng.next_index(static_cast<std::uint64_t>(policy.n_min),
                     static_cast<std::uint64_t>(policy.n_max)));
  auto draw_point = [&]() {
    SpacePoint p(dim);
    for (auto& x : p) x = rng.next_uniform(policy.epsilon, 1.0);
    return p;
  };
  Configuration c;
  c.epsilon = policy.epsilon;
  c.s = draw_point();
  c.t = draw_point();
  c.conditioning.reserve(n);
  for (std::size_t j = 0; j < n; ++j) c.conditioning.push_back(draw_point());
  return c;
}

ScanRecord evaluate_record(const Configuration& c, const HurstVector& h, BoundKind which) {
  const LndReport rep = evaluate_lnd(c, h);
  ScanRecord rec;
  rec.config = c;
  rec.exact_var = rep.numerator(which);
  rec.bound = rep.bound(which);
  rec.cls = rep.ratio_class(which);
  rec.ratio = rec.cls == RatioClass::finite ? rep.ratio(which) : 0.0;
  return rec;
}

/// Coordinate-wise shrinking-step descent pushing the finite ratio lower.
/// Deterministic: fixed sweep order, no randomness.
ScanRecord descend(ScanRecord incumbent, const ScanPolicy& policy, BoundKind which) {
  const std::size_t dim = policy.h.n();
  const double hi = 1.0 - kDomainMargin;
  for (int sweep = 0; sweep < policy.refine_steps; ++sweep) {
    bool improved = false;
    for (int level = 0; level < kDescentLevels; ++level) {
      const double step = 0.25 * (1.0 - policy.epsilon) * std::pow(0.5, level);
      const std::size_t n_points = 2 + incumbent.config.conditioning.size();
      for (std::size_t p = 0; p < n_points; ++p) {
        for (std::size_t axis = 0; axis < dim; ++axis) {
          for (double dir : {+1.0, -1.0}) {
            Configuration trial = incumbent.config;
            SpacePoint& point = p == 0 ? trial.s
                               : p == 1 ? trial.t
                                        : trial.conditioning[p - 2];
            point[axis] = std::clamp(point[axis] + dir * step, policy.epsilon, hi);
            const ScanRecord cand = evaluate_record(trial, policy.h, which);
            if (cand.cls == RatioClass::finite && cand.ratio < incumbent.ratio) {
              incumbent = cand;
              improved = true;
            }
          }
        }
      }
    }
    if (!improved) break;
  }
  return incumbent;
}

}  // namespace

ScanReport lnd_ratio_scan(const ScanPolicy& policy, BoundKind which,
                          const std::vector<Configuration>& fixtures, int workers) {
  if (policy.config_count < 1) throw std::invalid_argument("lnd_ratio_scan: config_count >= 1");
  if (!(policy.epsilon > 0.0 && policy.epsilon < 0.5))
    throw std::invalid_argument("lnd_ratio_scan: epsilon must lie in (0, 0.5)");
  if (policy.n_min < 1 || policy.n_max < policy.n_min)
    throw std::invalid_argument("lnd_ratio_scan: invalid n range");
  if (workers < 1) workers = 1;

  ScanReport report;
  report.which = which;
  const std::size_t total = fixtures.size() + static_cast<std::size_t>(policy.config_count);
  report.records.resize(total);

  // Index-addressed evaluation keeps the result independent of worker count.
  auto run_range = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const Configuration c =
          i < fixtures.size()
              ? fixtures[i]
              : sample_configuration(policy, static_cast<std::uint64_t>(i - fixtures.size()));
      report.records[i] = evaluate_record(c, policy.h, which);
    }
  };
  if (workers == 1) {
    run_range(0, total);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (total + static_cast<std::size_t>(workers) - 1) /
                              static_cast<std::size_t>(workers);
    for (int w = 0; w < workers; ++w) {
      const std::size_t lo = static_cast<std::size_t>(w) * chunk;
      const std::size_t hi = std::min(total, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back(run_range, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  report.histogram.assign(14, 0);
  double min_ratio = std::numeric_limits<double>::infinity();
  std::size_t argmin = total;
  for (std::size_t i = 0; i < total; ++i) {
    const ScanRecord& rec = report.records[i];
    switch (rec.cls) {
      case RatioClass::both_zero: ++report.both_zero_count; break;
      case RatioClass::unbounded: ++report.unbounded_count; break;
      case RatioClass::finite: {
        ++report.finite_count;
        const double lg = std::log10(rec.ratio);
        const int bin = std::clamp(static_cast<int>(std::floor((lg + 3.0) * 2.0)) + 1, 0, 13);
        ++report.histogram[static_cast<std::size_t>(bin)];
        if (rec.ratio < min_ratio) {
          min_ratio = rec.ratio;
          argmin = i;
        }
        break;
      }
    }
  }

  if (argmin < total) {
    ScanRecord incumbent = report.records[argmin];
    if (policy.refine_steps > 0) incumbent = descend(incumbent, policy, which);
    report.min_ratio = incumbent.ratio;
    report.argmin = incumbent.config;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Separating-function verification.

namespace {

struct AxisIntegrals {
  double inner = 1.0;        // product of per-axis inner-product factors
  double kernel_norm2 = 1.0; // product of per-axis squared kernel norms over the h box
};

/// int_lo^hi (c - u)_+^{e} du, antiderivative form with support clipping.
double kernel_segment_integral(double c, double lo, double hi, double e) {
  const double upper = std::min(hi, c);
  if (upper <= lo) return 0.0;
  const double p = e + 1.0;
  return (pos_pow(c - lo, p) - pos_pow(c - upper, p)) / p;
}

void check_quad(const QuadResult& q, const char* what) {
  if (!q.converged)
    throw NumericalError(std::string("h_orthogonality_check: quadrature for ") + what +
                         " did not converge (value " + std::to_string(q.value) + ", error " +
                         std::to_string(q.error_estimate) + ", " +
                         std::to_string(q.evaluations) + " evaluations)");
}

}  // namespace

HReport h_orthogonality_check(const Configuration& c_in, const HurstVector& h, int axis_k,
                              int axis_i, double quad_tol) {
  const auto dim = static_cast<int>(h.n());
  if (axis_k < 0 || axis_k >= dim || axis_i < 0 || axis_i >= dim || axis_k == axis_i)
    throw std::invalid_argument("h_orthogonality_check: need distinct axes k != i in range");
  Configuration c = c_in;
  c.validate(h.n());
  if (c.conditioning.empty())
    throw std::invalid_argument("h_orthogonality_check: empty conditioning set");

  const auto k = static_cast<std::size_t>(axis_k);
  const auto i = static_cast<std::size_t>(axis_i);
  if (c.t[i] < c.s[i]) std::swap(c.s, c.t);  // orientation: t_i - s_i >= 0
  if (c.t[i] == c.s[i])
    throw std::invalid_argument("h_orthogonality_check: s_i == t_i makes h the zero function");

  const std::vector<double> r = r_vector(c);
  const double r_k = r[k];
  if (!(std::abs(c.s[k] - c.t[k]) < r_k))
    throw std::invalid_argument("h_orthogonality_check: requires |s_k - t_k| < r_k");
  const double t_k = c.t[k];
  if (!(t_k - r_k > 0.0))
    throw std::invalid_argument("h_orthogonality_check: requires t_k - r_k > 0");

  const double hk = h[k];
  const double q = 0.5 - hk;  // lobe exponent
  const double eps = c.epsilon;
  const double span_i = c.t[i] - c.s[i];

  HReport rep;
  rep.config = c;
  rep.axis_k = axis_k;
  rep.axis_i = axis_i;
  rep.r_k = r_k;

  auto lobe = [&](double v, double offset) { return pos_pow(v - t_k - offset, q); };
  auto h_k = [&](double v) { return lobe(v, -r_k) + lobe(v, r_k) - 2.0 * lobe(v, 0.0); };

  // ||h_k||^2 over [t_k - r_k, inf). Knots at t_k - r_k, t_k, t_k + r_k; the
  // leading algebraic exponent at each knot is 2q for q < 0 (squared lobe)
  // and q otherwise (cross term).
  const double alpha_knot = q < 0.0 ? 2.0 * q : q;
  auto h_k_sq = [&](double v) { const double y = h_k(v); return y * y; };
  double norm_k = 0.0;
  {
    const QuadResult p1 =
        integrate_endpoint_power(h_k_sq, t_k - r_k, t_k, 2.0 * q, 0.0, quad_tol);
    check_quad(p1, "||h||^2 left lobe");
    const QuadResult p2 =
        integrate_endpoint_power(h_k_sq, t_k, t_k + r_k, alpha_knot, 0.0, quad_tol);
    check_quad(p2, "||h||^2 middle lobe");
    const double window_end = t_k + r_k + std::max(8.0 * r_k, 4.0);
    const QuadResult p3 =
        integrate_endpoint_power(h_k_sq, t_k + r_k, window_end, alpha_knot, 0.0, quad_tol);
    check_quad(p3, "||h||^2 near tail");
    const QuadResult p4 = integrate_to_infinity(h_k_sq, window_end, quad_tol);
    check_quad(p4, "||h||^2 far tail");
    norm_k = p1.value + p2.value + p3.value + p4.value;
  }
  const double box_factor = span_i * std::pow(eps, static_cast<double>(dim - 2));
  rep.h_norm2_quadrature = norm_k * box_factor;

  // Closed form: the scaled profile integral C(H_k) times the predicted
  // r_k^{2-2H_k} |s_i-t_i| eps^{N-2} scaling.
  {
    auto profile_sq = [&](double v) {
      const double y = pos_pow(v, q) + pos_pow(v - 2.0, q) - 2.0 * pos_pow(v - 1.0, q);
      return y * y;
    };
    const QuadResult p1 = integrate_endpoint_power(profile_sq, 0.0, 1.0, 2.0 * q, 0.0, quad_tol);
    const QuadResult p2 = integrate_endpoint_power(profile_sq, 1.0, 2.0, alpha_knot, 0.0, quad_tol);
    const QuadResult p3 = integrate_endpoint_power(profile_sq, 2.0, 16.0, alpha_knot, 0.0, quad_tol);
    const QuadResult p4 = integrate_to_infinity(profile_sq, 16.0, quad_tol);
    check_quad(p1, "profile constant");
    check_quad(p2, "profile constant");
    check_quad(p3, "profile constant");
    check_quad(p4, "profile constant");
    const double c_h = p1.value + p2.value + p3.value + p4.value;
    rep.h_norm2_closed_form = c_h * std::pow(r_k, 2.0 - 2.0 * hk) * box_factor;
  }

  // Inner products against each conditioning kernel, axis by axis.
  const double lo_k = t_k - r_k;
  for (const auto& sj : c.conditioning) {
    double axis_k_factor = 0.0;
    {
      // Sum over the three lobes; each term is a Beta-type integral.
      for (auto [offset, weight] : {std::pair{-r_k, 1.0}, {r_k, 1.0}, {0.0, -2.0}}) {
        const double lo = t_k + offset;
        const double hi = sj[k];
        if (hi <= lo) continue;
        auto f = [&, offset](double u) {
          return pos_pow(sj[k] - u, hk - 0.5) * pos_pow(u - t_k - offset, q);
        };
        const QuadResult part = integrate_endpoint_power(f, lo, hi, q, hk - 0.5, quad_tol);
        check_quad(part, "inner product lobe");
        axis_k_factor += weight * part.value;
      }
    }
    double factor = axis_k_factor;
    double kernel_norm2 = kernel_segment_integral(sj[k], lo_k, sj[k], 2.0 * hk - 1.0);
    {
      // axis i: integral over [s_i, t_i].
      const double hi_exp = h[i] - 0.5;
      auto f = [&](double u) { return pos_pow(sj[i] - u, hi_exp); };
      const double upper = std::min(c.t[i], sj[i]);
      if (upper > c.s[i]) {
        const double alpha_r = sj[i] <= c.t[i] ? hi_exp : 0.0;
        const QuadResult part = integrate_endpoint_power(f, c.s[i], upper, 0.0, alpha_r, quad_tol);
        check_quad(part, "axis-i factor");
        factor *= part.value;
      } else {
        factor = 0.0;
      }
      kernel_norm2 *= kernel_segment_integral(sj[i], c.s[i], c.t[i], 2.0 * h[i] - 1.0);
    }
    for (std::size_t l = 0; l < h.n(); ++l) {
      if (l == k || l == i) continue;
      const double e = h[l] - 0.5;
      auto f = [&](double u) { return pos_pow(sj[l] - u, e); };
      const double upper = std::min(eps, sj[l]);
      if (upper > 0.0) {
        const double alpha_r = sj[l] <= eps ? e : 0.0;
        const QuadResult part = integrate_endpoint_power(f, 0.0, upper, 0.0, alpha_r, quad_tol);
        check_quad(part, "side-axis factor");
        factor *= part.value;
      } else {
        factor = 0.0;
      }
      kernel_norm2 *= kernel_segment_integral(sj[l], 0.0, eps, 2.0 * h[l] - 1.0);
    }
    rep.inner_products.push_back(factor);
    const double scale = std::sqrt(rep.h_norm2_quadrature * kernel_norm2);
    rep.inner_products_rel.push_back(scale > 0.0 ? std::abs(factor) / scale : 0.0);
    rep.proof_valid.push_back(sj[k] <= t_k - r_k || sj[k] >= t_k + r_k);
  }

  // Projection diagnostic <h, K_t>^2 / ||h||^2.
  {
    auto f = [&](double u) {
      return pos_pow(t_k - u, hk - 0.5) * pos_pow(u - t_k + r_k, q);
    };
    const QuadResult part = integrate_endpoint_power(f, t_k - r_k, t_k, q, hk - 0.5, quad_tol);
    check_quad(part, "target inner product");
    double target = part.value;
    target *= kernel_segment_integral(c.t[i], c.s[i], c.t[i], h[i] - 0.5);
    for (std::size_t l = 0; l < h.n(); ++l) {
      if (l == k || l == i) continue;
      target *= kernel_segment_integral(c.t[l], 0.0, eps, h[l] - 0.5);
    }
    rep.projection_bound =
        rep.h_norm2_quadrature > 0.0 ? target * target / rep.h_norm2_quadrature : 0.0;
  }

  const LinearFunctional increment{{c.t, c.s}, {1.0, -1.0}};
  rep.exact_var = conditional_variance(increment, c.conditioning, h);
  rep.c3_expression = std::pow(r_k, 2.0 * hk) * pow_abs(span_i, 2.0 * h[i]);
  rep.c3_ratio = rep.c3_expression > 0.0 ? rep.exact_var / rep.c3_expression : 0.0;
  return rep;
}

// ---------------------------------------------------------------------------
// Sojourn estimation.

SojournReport sojourn_estimate(const SpacePoint& x, const SpacePoint& y,
                               const std::vector<double>& r_values,
                               const std::vector<FieldSample>& fields,
                               const GridSpec& shift_lattice, double epsilon) {
  if (r_values.size() < 2)
    throw std::invalid_argument("sojourn_estimate: need at least two R values for a slope");
  for (std::size_t i = 0; i < r_values.size(); ++i) {
    if (!(r_values[i] > 0.0) || (i > 0 && r_values[i] <= r_values[i - 1]))
      throw std::invalid_argument("sojourn_estimate: R values must be positive and increasing");
  }
  if (fields.empty()) throw std::invalid_argument("sojourn_estimate: no field replicas");

  const std::size_t n_shift = shift_lattice.total_nodes();
  std::vector<SpacePoint> shifts(n_shift);
  for (std::size_t i = 0; i < n_shift; ++i) shifts[i] = shift_lattice.node(i);

  SojournReport rep;
  rep.r_values = r_values;
  rep.domain_volume = std::pow(1.0 - epsilon, static_cast<double>(shift_lattice.dim()));
  rep.per_replica.resize(fields.size());
  rep.mean_occupation.assign(r_values.size(), 0.0);

  for (std::size_t f = 0; f < fields.size(); ++f) {
    const ShiftedValues at_x = evaluate_shifted(fields[f], shifts, x);
    const ShiftedValues at_y = evaluate_shifted(fields[f], shifts, y);
    rep.max_snap_distance =
        std::max({rep.max_snap_distance, at_x.max_snap_distance, at_y.max_snap_distance});
    std::vector<double> dist(n_shift);
    for (std::size_t i = 0; i < n_shift; ++i) {
      double d2 = 0.0;
      for (std::size_t comp = 0; comp < at_x.values[i].size(); ++comp) {
        const double diff = at_x.values[i][comp] - at_y.values[i][comp];
        d2 += diff * diff;
      }
      dist[i] = std::sqrt(d2);
    }
    rep.per_replica[f].resize(r_values.size());
    for (std::size_t ri = 0; ri < r_values.size(); ++ri) {
      const double threshold = 1.0 / r_values[ri];
      std::size_t hits = 0;
      for (double d : dist) hits += d <= threshold ? 1 : 0;
      const double occ = rep.domain_volume * static_cast<double>(hits) /
                         static_cast<double>(n_shift);
      rep.per_replica[f][ri] = occ;
      rep.mean_occupation[ri] += occ / static_cast<double>(fields.size());
    }
  }

  std::vector<double> log_r(r_values.size()), log_i(r_values.size());
  for (std::size_t ri = 0; ri < r_values.size(); ++ri) {
    if (!(rep.mean_occupation[ri] > 0.0))
      throw NumericalError("sojourn_estimate: empty occupation at R = " +
                           std::to_string(r_values[ri]) + "; shrink the R range");
    log_r[ri] = std::log(r_values[ri]);
    log_i[ri] = std::log(rep.mean_occupation[ri]);
  }
  const LineFit fit = ols_fit(log_r, log_i);
  rep.slope = fit.slope;
  rep.stderr_ = fit.stderr_slope;
  return rep;
}

}  // namespace fbs
