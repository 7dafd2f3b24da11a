#pragma once

#include <functional>
#include <stdexcept>

namespace dtfe {

// Tolerances and budgets for adaptive integration.  Budgets exist because
// the moment formulas nest integrals three deep; a shared evaluation
// budget turns a pathological integrand into a clean failure instead of a
// hang.
struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-13;
  int max_depth = 15;  // adaptive bisection depth per call
  long long max_evals = 100000000;
};

class QuadratureFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EvalBudget {
 public:
  explicit EvalBudget(long long cap) : cap_(cap) {}
  void charge();  // one integrand evaluation; throws when the cap is hit
  long long used() const { return used_; }

 private:
  long long cap_;
  long long used_ = 0;
};

// Definite integral over [a, b].  Throws QuadratureFailure if the error
// estimate does not meet the spec or the integrand produced a NaN.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec, EvalBudget* budget = nullptr);

// Integral over [a, infinity) for integrands with exponential decay.
double integrate_half_line(const std::function<double(double)>& f, double a,
                           const QuadratureSpec& spec,
                           EvalBudget* budget = nullptr);

}  // namespace dtfe
