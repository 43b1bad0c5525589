#include "hbm/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace hbm {

QuadratureResult integrate(const RealFunction& f, double a, double b, double rel_tol,
                           unsigned max_depth) {
  QuadratureResult r;
  r.value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, max_depth,
                                                                          rel_tol, &r.error);
  return r;
}

double find_cutoff(const RealFunction& f, double start, double threshold, double max_l) {
  double l = start;
  while (l <= max_l) {
    if (std::abs(f(l)) < threshold && std::abs(f(-l)) < threshold) {
      return l;
    }
    l *= 2.0;
  }
  throw std::runtime_error("find_cutoff: integrand does not decay below threshold");
}

QuadratureResult integrate_with_cutoff(const RealFunction& f, double start, double threshold,
                                       double rel_tol) {
  const double l = 2.0 * find_cutoff(f, start, threshold);
  QuadratureResult total;
  std::vector<double> knots{-l, 0.0, l};
  if (l > 1.0) {
    knots = {-l, -1.0, 0.0, 1.0, l};
  }
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const QuadratureResult piece = integrate(f, knots[i], knots[i + 1], rel_tol);
    total.value += piece.value;
    total.error += piece.error;
  }
  return total;
}

}  // namespace hbm
