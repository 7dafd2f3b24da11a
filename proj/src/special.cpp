#include "dtfe/special.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dtfe {

double unit_ball_volume(int dim) {
  if (dim == 1) return 2.0;
  if (dim == 2) return std::numbers::pi;
  throw std::invalid_argument("unit_ball_volume: dim must be 1 or 2");
}

namespace {

// Power series around 0, accurate for x <= 1:
// E1(x) = -gamma - log x + sum_{k>=1} (-1)^(k+1) x^k / (k * k!)
double e1_series(double x) {
  double sum = 0.0, term = 1.0;
  for (int k = 1; k < 64; ++k) {
    term *= -x / k;
    const double add = -term / k;
    sum += add;
    if (std::abs(add) < 1e-18 * std::abs(sum)) break;
  }
  return -kEulerGamma - std::log(x) + sum;
}

// Continued fraction for x > 1, evaluated with the modified Lentz scheme.
// Returns exp(x) * E1(x) directly, which avoids underflow for large x:
// exp(x)E1(x) = 1/(x + 1/(1 + 1/(x + 2/(1 + 2/(x + ...)))))
double e1_scaled_cf(double x) {
  const double tiny = 1e-300;
  double f = tiny, c = f, d = 0.0;
  for (int j = 1; j < 200; ++j) {
    double aj, bj;
    if (j == 1) {
      aj = 1.0;
      bj = x;
    } else if (j % 2 == 0) {
      aj = static_cast<double>(j / 2);
      bj = 1.0;
    } else {
      aj = static_cast<double>((j - 1) / 2);
      bj = x;
    }
    d = bj + aj * d;
    if (d == 0.0) d = tiny;
    c = bj + aj / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return f;
}

}  // namespace

double exp_integral_e1(double x) {
  if (!(x > 0.0)) throw std::domain_error("exp_integral_e1: requires x > 0");
  if (x <= 1.0) return e1_series(x);
  return std::exp(-x) * e1_scaled_cf(x);
}

double exp_integral_e1_scaled(double x) {
  if (!(x > 0.0))
    throw std::domain_error("exp_integral_e1_scaled: requires x > 0");
  if (x <= 1.0) return std::exp(x) * e1_series(x);
  return e1_scaled_cf(x);
}

double exp_integral_e2(double x) {
  if (x < 0.0) throw std::domain_error("exp_integral_e2: requires x >= 0");
  if (x == 0.0) return 1.0;
  return std::exp(-x) - x * exp_integral_e1(x);
}

double exp_e1_integral(double a, double c) {
  if (!(a > 0.0) || !(c > 0.0))
    throw std::domain_error("exp_e1_integral: requires a, c > 0");
  const double u = a * c;
  return (kEulerGamma + std::log(u) + exp_integral_e1_scaled(u)) / a;
}

}  // namespace dtfe
