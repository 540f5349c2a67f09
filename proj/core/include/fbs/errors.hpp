#pragma once

#include <stdexcept>
#include <string>

namespace fbs {

/// Resource budget exceeded (grid node count, fractal point count, ...).
class BudgetError : public std::runtime_error {
public:
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

/// A numerical procedure failed to reach its accuracy or stability target
/// (factorization failure, quadrature non-convergence, degenerate fit).
class NumericalError : public std::runtime_error {
public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fbs
