#pragma once

// Adaptive Gauss-Kronrod quadrature helpers used by the density and
// normalization checks.

#include <functional>

namespace hbm {

using RealFunction = std::function<double(double)>;

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
};

/// Adaptive 61-point Gauss-Kronrod on [a, b]; either limit may be infinite.
QuadratureResult integrate(const RealFunction& f, double a, double b, double rel_tol = 1e-12,
                           unsigned max_depth = 20);

/// Smallest L = start * 2^j with |f(L)| and |f(-L)| below threshold.
/// Throws std::runtime_error if none is found before max_l.
double find_cutoff(const RealFunction& f, double start, double threshold, double max_l = 1e12);

/// Integral over [-L, L] where L is the doubled cutoff for |f| < threshold,
/// split at the origin and at +-1 so peaked integrands are resolved.
QuadratureResult integrate_with_cutoff(const RealFunction& f, double start = 1.0,
                                       double threshold = 1e-14, double rel_tol = 1e-12);

}  // namespace hbm
