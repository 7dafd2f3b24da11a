#pragma once

namespace dtfe {

inline constexpr double kEulerGamma = 0.5772156649015329;

// Lebesgue volume of the unit ball, dimensions 1 and 2.
double unit_ball_volume(int dim);

// Exponential integral E1(x) = int_x^inf exp(-t)/t dt, x > 0.
// Relative error below 1e-12 across the domain.
double exp_integral_e1(double x);

// exp(x) * E1(x); stays representable for large x where E1 underflows.
double exp_integral_e1_scaled(double x);

// E2(x) = exp(-x) - x * E1(x) for x >= 0, with E2(0) = 1.
double exp_integral_e2(double x);

// int_0^c exp(a*x) * E1(a*x) dx for a, c > 0.  The antiderivative of
// exp(u)E1(u) is exp(u)E1(u) + log(u) up to a constant, which gives the
// closed form (euler_gamma + log(a*c) + exp(a*c)E1(a*c)) / a.
double exp_e1_integral(double a, double c);

}  // namespace dtfe
