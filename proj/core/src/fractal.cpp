#include "fbs/fractal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fbs/errors.hpp"

namespace fbs {

AxisKind axis_kind_from_name(const std::string& name) {
  if (name == "cantor") return AxisKind::cantor;
  if (name == "full") return AxisKind::full;
  if (name == "singleton") return AxisKind::singleton;
  throw std::invalid_argument("unknown axis kind: " + name);
}

const char* axis_kind_name(AxisKind k) {
  switch (k) {
    case AxisKind::cantor: return "cantor";
    case AxisKind::full: return "full";
    case AxisKind::singleton: return "singleton";
  }
  return "unknown";
}

FractalSet FractalSet::cantor_product(std::size_t n, double lambda, int depth, SpacePoint offset) {
  FractalSet f;
  f.axes.assign(n, AxisKind::cantor);
  f.ratios.assign(n, lambda);
  f.depth = depth;
  f.offset = std::move(offset);
  f.validate();
  return f;
}

FractalSet FractalSet::full_cube(std::size_t n, int depth, SpacePoint offset) {
  FractalSet f;
  f.axes.assign(n, AxisKind::full);
  f.ratios.assign(n, 0.5);
  f.depth = depth;
  f.offset = std::move(offset);
  f.validate();
  return f;
}

FractalSet FractalSet::singleton_product(std::size_t n, SpacePoint offset) {
  FractalSet f;
  f.axes.assign(n, AxisKind::singleton);
  f.ratios.assign(n, 0.5);
  f.depth = 1;
  f.offset = std::move(offset);
  f.validate();
  return f;
}

void FractalSet::validate() const {
  if (axes.empty()) throw std::invalid_argument("FractalSet: no axes");
  if (ratios.size() != axes.size())
    throw std::invalid_argument("FractalSet: one contraction ratio per axis required");
  if (offset.size() != axes.size())
    throw std::invalid_argument("FractalSet: offset dimension mismatch");
  if (depth < 1) throw std::invalid_argument("FractalSet: depth must be >= 1");
  for (std::size_t l = 0; l < axes.size(); ++l) {
    if (axes[l] == AxisKind::cantor && !(ratios[l] > 0.0 && ratios[l] <= 0.5))
      throw std::invalid_argument("FractalSet: contraction ratio must lie in (0, 1/2]");
    if (!(offset[l] > 0.0))
      throw std::invalid_argument("FractalSet: offset must place the set in (0, inf)^N");
  }
}

std::size_t FractalSet::axis_point_count(std::size_t l) const {
  switch (axes[l]) {
    case AxisKind::singleton: return 1;
    case AxisKind::cantor:
    case AxisKind::full: return std::size_t{1} << depth;
  }
  return 1;
}

std::size_t FractalSet::point_count() const {
  std::size_t total = 1;
  for (std::size_t l = 0; l < axes.size(); ++l) total *= axis_point_count(l);
  return total;
}

double FractalSet::axis_dimension(std::size_t l) const {
  switch (axes[l]) {
    case AxisKind::singleton: return 0.0;
    case AxisKind::full: return 1.0;
    case AxisKind::cantor: return std::log(2.0) / std::log(1.0 / ratios[l]);
  }
  return 0.0;
}

double FractalSet::axis_cell_size(std::size_t l) const {
  switch (axes[l]) {
    case AxisKind::singleton: return 0.0;
    case AxisKind::full: return std::pow(0.5, depth);
    case AxisKind::cantor: return std::pow(ratios[l], depth);
  }
  return 0.0;
}

double FractalSet::rho_dimension(const HurstVector& h) const {
  if (h.n() != axes.size()) throw std::invalid_argument("FractalSet: Hurst dimension mismatch");
  double sum = 0.0;
  for (std::size_t l = 0; l < axes.size(); ++l) sum += axis_dimension(l) / h[l];
  return sum;
}

std::vector<double> fractal_axis_points(const FractalSet& spec, std::size_t l) {
  spec.validate();
  const double off = spec.offset[l];
  switch (spec.axes[l]) {
    case AxisKind::singleton: return {off};
    case AxisKind::full: {
      const std::size_t m = std::size_t{1} << spec.depth;
      std::vector<double> pts(m);
      const double step = std::pow(0.5, spec.depth);
      for (std::size_t j = 0; j < m; ++j) pts[j] = off + static_cast<double>(j) * step;
      return pts;
    }
    case AxisKind::cantor: {
      const double lambda = spec.ratios[l];
      std::vector<double> pts{0.0};
      double scale = 1.0;
      for (int level = 0; level < spec.depth; ++level) {
        std::vector<double> next;
        next.reserve(pts.size() * 2);
        const double gap = (1.0 - lambda) * scale;
        for (double p : pts) {
          next.push_back(p);
          next.push_back(p + gap);
        }
        pts = std::move(next);
        scale *= lambda;
      }
      for (double& p : pts) p += off;
      std::sort(pts.begin(), pts.end());
      return pts;
    }
  }
  return {};
}

std::vector<SpacePoint> generate_fractal(const FractalSet& spec, std::size_t budget) {
  spec.validate();
  if (spec.point_count() > budget)
    throw BudgetError("generate_fractal: " + std::to_string(spec.point_count()) +
                      " points exceed budget " + std::to_string(budget));
  std::vector<std::vector<double>> per_axis(spec.dim());
  for (std::size_t l = 0; l < spec.dim(); ++l) per_axis[l] = fractal_axis_points(spec, l);

  std::vector<SpacePoint> points;
  points.reserve(spec.point_count());
  SpacePoint current(spec.dim());
  // Odometer walk over the Cartesian product, axis 0 slowest.
  std::vector<std::size_t> idx(spec.dim(), 0);
  for (;;) {
    for (std::size_t l = 0; l < spec.dim(); ++l) current[l] = per_axis[l][idx[l]];
    points.push_back(current);
    std::size_t l = spec.dim();
    while (l-- > 0) {
      if (++idx[l] < per_axis[l].size()) break;
      idx[l] = 0;
      if (l == 0) return points;
    }
  }
}

}  // namespace fbs
