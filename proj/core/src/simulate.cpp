#include "fbs/simulate.hpp"

#include <Eigen/Dense>

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "fbs/errors.hpp"
#include "fbs/field_model.hpp"
#include "fbs/version.hpp"

namespace fbs {

namespace {

Eigen::MatrixXd axis_gram(const std::vector<double>& coords, double hurst) {
  const auto m = static_cast<Eigen::Index>(coords.size());
  Eigen::MatrixXd k(m, m);
  const double two_h = 2.0 * hurst;
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double v = pow_abs(coords[static_cast<std::size_t>(i)], two_h) +
                       pow_abs(coords[static_cast<std::size_t>(j)], two_h) -
                       pow_abs(coords[static_cast<std::size_t>(i)] - coords[static_cast<std::size_t>(j)], two_h);
      k(i, j) = v;
      k(j, i) = v;
    }
  return k;
}

Eigen::MatrixXd cholesky_with_ridge(Eigen::MatrixXd k, const std::string& label) {
  const double ridge = kFactorizationRidge * k.diagonal().maxCoeff();
  k.diagonal().array() += ridge;
  Eigen::LLT<Eigen::MatrixXd> llt(k);
  if (llt.info() != Eigen::Success)
    throw NumericalError("simulate: Cholesky factorization failed for " + label);
  return llt.matrixL();
}

/// out = (I_left (x) L (x) I_right) in, the mode product along one axis.
void apply_mode(const Eigen::MatrixXd& l, std::size_t left, std::size_t m, std::size_t right,
                const std::vector<double>& in, std::vector<double>& out) {
  for (std::size_t a = 0; a < left; ++a) {
    for (std::size_t r = 0; r < right; ++r) {
      const std::size_t base = a * m * right + r;
      for (std::size_t i = 0; i < m; ++i) {
        double acc = 0.0;
        // L is lower triangular: columns 0..i contribute.
        for (std::size_t j = 0; j <= i; ++j)
          acc += l(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) *
                 in[base + j * right];
        out[base + i * right] = acc;
      }
    }
  }
}

std::vector<double> draw_normals(const GridSpec& grid, int d, const SeedSpec& seed) {
  const std::size_t total = grid.total_nodes();
  std::vector<double> z(static_cast<std::size_t>(d) * total);
  for (int c = 0; c < d; ++c) {
    RandomStream stream(seed, static_cast<std::uint64_t>(c), RandomStream::Purpose::field_noise);
    for (std::size_t i = 0; i < total; ++i) z[static_cast<std::size_t>(c) * total + i] = stream.next_normal();
  }
  return z;
}

void check_noise(const GridSpec& grid, int d, std::span<const double> normals) {
  if (normals.size() != static_cast<std::size_t>(d) * grid.total_nodes())
    throw std::invalid_argument("simulate: injected noise size must be d * total_nodes");
}

}  // namespace

FieldSample simulate_with_noise(const GridSpec& grid, const HurstVector& h,
                                std::span<const double> normals) {
  check_noise(grid, h.d(), normals);
  const std::size_t total = grid.total_nodes();

  std::vector<Eigen::MatrixXd> factors;
  factors.reserve(grid.dim());
  for (std::size_t l = 0; l < grid.dim(); ++l)
    factors.push_back(cholesky_with_ridge(axis_gram(grid.axis(l), h[l]),
                                          "axis " + std::to_string(l)));

  FieldSample out{grid, h, SeedSpec{}, std::vector<double>(normals.begin(), normals.end())};
  std::vector<double> scratch(total);
  for (int c = 0; c < h.d(); ++c) {
    double* comp = out.values.data() + static_cast<std::size_t>(c) * total;
    std::vector<double> cur(comp, comp + total);
    std::size_t left = 1;
    for (std::size_t l = 0; l < grid.dim(); ++l) {
      const std::size_t m = grid.axis_size(l);
      const std::size_t right = total / (left * m);
      apply_mode(factors[l], left, m, right, cur, scratch);
      cur.swap(scratch);
      left *= m;
    }
    std::copy(cur.begin(), cur.end(), comp);
  }
  return out;
}

FieldSample simulate(const GridSpec& grid, const HurstVector& h, const SeedSpec& seed) {
  FieldSample out = simulate_with_noise(grid, h, draw_normals(grid, h.d(), seed));
  out.seed = seed;
  return out;
}

FieldSample simulate_direct_with_noise(const GridSpec& grid, const HurstVector& h,
                                       std::span<const double> normals) {
  const std::size_t total = grid.total_nodes();
  if (total > kDirectNodeLimit)
    throw BudgetError("simulate_direct: grid has " + std::to_string(total) +
                      " nodes, limit is " + std::to_string(kDirectNodeLimit));
  check_noise(grid, h.d(), normals);

  Eigen::MatrixXd full(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(total));
  for (std::size_t i = 0; i < total; ++i) {
    const SpacePoint pi = grid.node(i);
    for (std::size_t j = 0; j <= i; ++j) {
      const double v = covariance(pi, grid.node(j), h);
      full(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
      full(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
    }
  }
  const Eigen::MatrixXd l = cholesky_with_ridge(std::move(full), "dense grid Gram");

  FieldSample out{grid, h, SeedSpec{}, std::vector<double>(normals.size())};
  for (int c = 0; c < h.d(); ++c) {
    Eigen::Map<const Eigen::VectorXd> z(normals.data() + static_cast<std::size_t>(c) * total,
                                        static_cast<Eigen::Index>(total));
    Eigen::Map<Eigen::VectorXd> x(out.values.data() + static_cast<std::size_t>(c) * total,
                                  static_cast<Eigen::Index>(total));
    x = l.triangularView<Eigen::Lower>() * z;
  }
  return out;
}

FieldSample simulate_direct(const GridSpec& grid, const HurstVector& h, const SeedSpec& seed) {
  FieldSample out = simulate_direct_with_noise(grid, h, draw_normals(grid, h.d(), seed));
  out.seed = seed;
  return out;
}

ShiftedValues evaluate_shifted(const FieldSample& field,
                               const std::vector<SpacePoint>& base_points,
                               const SpacePoint& shift) {
  if (shift.size() != field.grid.dim())
    throw std::invalid_argument("evaluate_shifted: shift dimension mismatch");

  // Collect every offender before failing, so the error names them all.
  std::string offenders;
  std::vector<SpacePoint> shifted(base_points.size());
  for (std::size_t i = 0; i < base_points.size(); ++i) {
    if (base_points[i].size() != field.grid.dim())
      throw std::invalid_argument("evaluate_shifted: base point dimension mismatch");
    SpacePoint p(field.grid.dim());
    for (std::size_t l = 0; l < p.size(); ++l) p[l] = base_points[i][l] + shift[l];
    if (!field.grid.contains(p)) {
      offenders += " #" + std::to_string(i);
      if (offenders.size() > 200) break;
    }
    shifted[i] = std::move(p);
  }
  if (!offenders.empty())
    throw std::invalid_argument("evaluate_shifted: shifted points outside grid:" + offenders);

  ShiftedValues out;
  out.values.resize(base_points.size());
  out.nodes.resize(base_points.size());
  for (std::size_t i = 0; i < shifted.size(); ++i) {
    double dist = 0.0;
    const std::size_t node = field.grid.nearest_node(shifted[i], &dist);
    out.max_snap_distance = std::max(out.max_snap_distance, dist);
    out.nodes[i] = node;
    out.values[i].resize(static_cast<std::size_t>(field.h.d()));
    for (int c = 0; c < field.h.d(); ++c) out.values[i][static_cast<std::size_t>(c)] = field.value(c, node);
  }
  return out;
}

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void save_field(const FieldSample& field, std::ostream& out) {
  out << "fbs-field 1\n";
  out << "rng " << kRngId << "\n";
  out << "seed " << field.seed.seed << " " << field.seed.stream << "\n";
  out << "dims " << field.grid.dim() << " " << field.h.d() << "\n";
  out << "hurst";
  for (double v : field.h.exponents()) out << " " << fmt_double(v);
  out << "\n";
  for (std::size_t l = 0; l < field.grid.dim(); ++l) {
    out << "axis " << l << " " << field.grid.axis_size(l);
    for (double v : field.grid.axis(l)) out << " " << fmt_double(v);
    out << "\n";
  }
  out << "values " << field.values.size() << "\n";
  // Row-major over nodes (axis 0 slowest), one line per component.
  const std::size_t total = field.grid.total_nodes();
  for (int c = 0; c < field.h.d(); ++c) {
    for (std::size_t i = 0; i < total; ++i) {
      if (i) out << " ";
      out << fmt_double(field.value(c, i));
    }
    out << "\n";
  }
}

void save_field(const FieldSample& field, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_field: cannot open " + path.string());
  save_field(field, out);
}

FieldSample load_field(std::istream& in) {
  std::string tag;
  int version = 0;
  in >> tag >> version;
  if (tag != "fbs-field" || version != 1)
    throw std::runtime_error("load_field: not an fbs-field v1 container");
  std::string rng_id;
  in >> tag >> rng_id;
  SeedSpec seed;
  in >> tag >> seed.seed >> seed.stream;
  std::size_t n = 0;
  int d = 0;
  in >> tag >> n >> d;
  std::vector<double> exponents(n);
  in >> tag;
  for (auto& v : exponents) in >> v;
  std::vector<std::vector<double>> axes(n);
  for (std::size_t l = 0; l < n; ++l) {
    std::size_t idx = 0, m = 0;
    in >> tag >> idx >> m;
    axes[idx].resize(m);
    for (auto& v : axes[idx]) in >> v;
  }
  std::size_t count = 0;
  in >> tag >> count;
  std::vector<double> values(count);
  for (auto& v : values) in >> v;
  if (!in) throw std::runtime_error("load_field: truncated container");
  return FieldSample{GridSpec(std::move(axes)), HurstVector(std::move(exponents), d), seed,
                     std::move(values)};
}

FieldSample load_field(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_field: cannot open " + path.string());
  return load_field(in);
}

}  // namespace fbs
