#include "dtfe/quadrature.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace dtfe {

void EvalBudget::charge() {
  if (++used_ > cap_) throw QuadratureFailure("integration budget exhausted");
}

namespace {

// Error estimates are measured against the L1 norm, which is the honest
// scale when the integrand changes sign.
void check_result(double value, double err, double l1,
                  const QuadratureSpec& spec) {
  if (!std::isfinite(value)) throw QuadratureFailure("integrand not finite");
  const double tol = std::max(spec.abs_tol, 10.0 * spec.rel_tol * l1);
  if (err > tol) throw QuadratureFailure("integral failed to converge");
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec, EvalBudget* budget) {
  if (a == b) return 0.0;
  auto counted = [&](double x) {
    if (budget) budget->charge();
    return f(x);
  };
  double err = 0.0, l1 = 0.0;
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
          counted, a, b, spec.max_depth, spec.rel_tol, &err, &l1);
  check_result(value, err, l1, spec);
  return value;
}

double integrate_half_line(const std::function<double(double)>& f, double a,
                           const QuadratureSpec& spec, EvalBudget* budget) {
  auto counted = [&](double u) {
    if (budget) budget->charge();
    return f(a + u);
  };
  boost::math::quadrature::exp_sinh<double> integrator;
  double err = 0.0, l1 = 0.0;
  std::size_t levels = 0;
  const double value = integrator.integrate(
      counted, spec.rel_tol, &err, &l1, &levels);
  check_result(value, err, l1, spec);
  return value;
}

}  // namespace dtfe
