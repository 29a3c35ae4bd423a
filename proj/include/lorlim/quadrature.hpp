#pragma once

#include <cstddef>
#include <functional>

namespace lorlim {

struct QuadratureConfig {
  double rel_tol = 1e-9;                 // stop when error < rel_tol * (1 + |value|)
  std::size_t max_subintervals = 1000000;  // divergence cap
  double divergence_value = 1e12;          // partial sums above this diverge
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t subintervals = 0;
  bool diverged = false;  // value is +inf when set
};

/// Globally adaptive composite 5-point Gauss-Legendre rule on [a, b].
///
/// The interval with the largest error estimate (one rule on the whole
/// interval against the rule on both halves) is bisected until the summed
/// error meets the tolerance. Integrands are never evaluated at a or b.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureConfig& cfg = {});

/// Single 5-point Gauss-Legendre rule on [a, b].
double gauss_legendre5(const std::function<double(double)>& f, double a, double b);

}  // namespace lorlim
