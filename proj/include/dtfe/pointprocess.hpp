#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>

#include "dtfe/geometry.hpp"
#include "dtfe/quadrature.hpp"

namespace dtfe {

class InvalidRate : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidBound : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Intensity of a Poisson process: a constant rate, an affine profile
// c0 + c1*x in one dimension, or an arbitrary callable.
class IntensityFunction {
 public:
  static IntensityFunction constant(double rate);
  static IntensityFunction affine1d(double offset, double slope);
  static IntensityFunction custom(std::function<double(const Point&)> f);

  // Accepts "constant{rate}" and "affine1d{offset,slope}".
  static IntensityFunction parse(const std::string& text);

  double operator()(const Point& p) const;
  double value1d(double x) const { return (*this)({x, 0.0}); }

  bool is_constant() const { return kind_ == Kind::Constant; }
  bool is_affine1d() const { return kind_ == Kind::Affine1d; }
  double constant_rate() const;

  // Extremes over a window; closed form for the parametric kinds, not
  // available for custom callables (callers must supply bounds there).
  double upper_bound(const Window& w) const;
  double lower_bound(const Window& w) const;

  // Cumulative mass int_a^b of the 1-d profile.  Parametric kinds use the
  // closed form; custom callables are integrated numerically.
  double cumulative(double a, double b,
                    const QuadratureSpec& spec = QuadratureSpec{},
                    EvalBudget* budget = nullptr) const;

  std::string describe() const;

 private:
  enum class Kind { Constant, Affine1d, Custom };
  Kind kind_ = Kind::Constant;
  double c0_ = 0.0, c1_ = 0.0;
  std::function<double(const Point&)> f_;
};

// Deterministic stream: one engine per (seed, stream) pair so replicated
// experiments can draw independent, reproducible randomness in any order.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream);

  double uniform01();  // [0, 1), 53 random bits
  double uniform(double a, double b);
  long poisson(double mean);
  Point uniform_in(const Window& w);

 private:
  std::mt19937_64 eng_;
};

PointPattern sample_homogeneous_poisson(double rate, const Window& w,
                                        Rng& rng);

// Thinning from a dominating homogeneous process at the given bound.
// Throws InvalidBound if the intensity exceeds the bound at a proposal and
// InvalidRate if it is negative there.
PointPattern sample_inhomogeneous_poisson(const IntensityFunction& intensity,
                                          double bound, const Window& w,
                                          Rng& rng);

}  // namespace dtfe
