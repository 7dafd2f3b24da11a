#include "dtfe/pointprocess.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dtfe {

IntensityFunction IntensityFunction::constant(double rate) {
  if (!(rate >= 0.0) || !std::isfinite(rate))
    throw InvalidRate("constant intensity must be a finite rate >= 0");
  IntensityFunction f;
  f.kind_ = Kind::Constant;
  f.c0_ = rate;
  return f;
}

IntensityFunction IntensityFunction::affine1d(double offset, double slope) {
  if (!std::isfinite(offset) || !std::isfinite(slope))
    throw InvalidRate("affine intensity coefficients must be finite");
  IntensityFunction f;
  f.kind_ = Kind::Affine1d;
  f.c0_ = offset;
  f.c1_ = slope;
  return f;
}

IntensityFunction IntensityFunction::custom(
    std::function<double(const Point&)> f) {
  if (!f) throw InvalidRate("custom intensity requires a callable");
  IntensityFunction g;
  g.kind_ = Kind::Custom;
  g.f_ = std::move(f);
  return g;
}

IntensityFunction IntensityFunction::parse(const std::string& text) {
  const auto open = text.find('{');
  const auto close = text.rfind('}');
  if (open == std::string::npos || close == std::string::npos ||
      close < open)
    throw std::invalid_argument("intensity spec must look like name{args}");
  const std::string name = text.substr(0, open);
  std::string args = text.substr(open + 1, close - open - 1);
  std::replace(args.begin(), args.end(), ',', ' ');
  std::istringstream in(args);
  if (name == "constant") {
    double rate;
    if (!(in >> rate)) throw std::invalid_argument("constant{rate}");
    return constant(rate);
  }
  if (name == "affine1d") {
    double offset, slope;
    if (!(in >> offset >> slope))
      throw std::invalid_argument("affine1d{offset,slope}");
    return affine1d(offset, slope);
  }
  throw std::invalid_argument("unknown intensity kind: " + name);
}

double IntensityFunction::operator()(const Point& p) const {
  switch (kind_) {
    case Kind::Constant:
      return c0_;
    case Kind::Affine1d:
      return c0_ + c1_ * p[0];
    case Kind::Custom:
      return f_(p);
  }
  return 0.0;
}

double IntensityFunction::constant_rate() const {
  if (kind_ != Kind::Constant)
    throw std::logic_error("constant_rate: intensity is not constant");
  return c0_;
}

double IntensityFunction::upper_bound(const Window& w) const {
  switch (kind_) {
    case Kind::Constant:
      return c0_;
    case Kind::Affine1d:
      return std::max(c0_ + c1_ * w.lo[0], c0_ + c1_ * w.hi[0]);
    case Kind::Custom:
      break;
  }
  throw std::invalid_argument(
      "upper_bound: custom intensities need an explicit bound");
}

double IntensityFunction::lower_bound(const Window& w) const {
  switch (kind_) {
    case Kind::Constant:
      return c0_;
    case Kind::Affine1d:
      return std::min(c0_ + c1_ * w.lo[0], c0_ + c1_ * w.hi[0]);
    case Kind::Custom:
      break;
  }
  throw std::invalid_argument(
      "lower_bound: custom intensities need an explicit bound");
}

double IntensityFunction::cumulative(double a, double b,
                                     const QuadratureSpec& spec,
                                     EvalBudget* budget) const {
  if (a > b) return -cumulative(b, a, spec, budget);
  switch (kind_) {
    case Kind::Constant:
      return c0_ * (b - a);
    case Kind::Affine1d:
      return c0_ * (b - a) + 0.5 * c1_ * (b * b - a * a);
    case Kind::Custom:
      return integrate([this](double x) { return f_({x, 0.0}); }, a, b, spec,
                       budget);
  }
  return 0.0;
}

std::string IntensityFunction::describe() const {
  std::ostringstream out;
  out.precision(17);
  switch (kind_) {
    case Kind::Constant:
      out << "constant{" << c0_ << "}";
      break;
    case Kind::Affine1d:
      out << "affine1d{" << c0_ << "," << c1_ << "}";
      break;
    case Kind::Custom:
      out << "custom";
      break;
  }
  return out.str();
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{
      static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
      static_cast<std::uint32_t>(stream),
      static_cast<std::uint32_t>(stream >> 32)};
  eng_.seed(seq);
}

double Rng::uniform01() {
  return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double a, double b) { return a + (b - a) * uniform01(); }

long Rng::poisson(double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean))
    throw std::invalid_argument("poisson: mean must be finite and >= 0");
  // product-of-uniforms counting, chunked so exp(-chunk) never underflows
  long total = 0;
  while (mean > 0.0) {
    const double chunk = std::min(mean, 256.0);
    mean -= chunk;
    const double limit = std::exp(-chunk);
    double p = 1.0;
    long k = 0;
    do {
      ++k;
      p *= uniform01();
    } while (p > limit);
    total += k - 1;
  }
  return total;
}

Point Rng::uniform_in(const Window& w) {
  Point p{uniform(w.lo[0], w.hi[0]), 0.0};
  if (w.dim == 2) p[1] = uniform(w.lo[1], w.hi[1]);
  return p;
}

PointPattern sample_homogeneous_poisson(double rate, const Window& w,
                                        Rng& rng) {
  if (!(rate >= 0.0) || !std::isfinite(rate))
    throw InvalidRate("rate must be finite and >= 0");
  PointPattern pat;
  pat.dim = w.dim;
  const long n = rng.poisson(rate * w.volume());
  for (long i = 0; i < n; ++i) pat.push(rng.uniform_in(w));
  return pat;
}

PointPattern sample_inhomogeneous_poisson(const IntensityFunction& intensity,
                                          double bound, const Window& w,
                                          Rng& rng) {
  if (!(bound > 0.0) || !std::isfinite(bound))
    throw InvalidBound("thinning bound must be finite and > 0");
  PointPattern pat;
  pat.dim = w.dim;
  const long n = rng.poisson(bound * w.volume());
  for (long i = 0; i < n; ++i) {
    const Point p = rng.uniform_in(w);
    const double lam = intensity(p);
    if (lam < 0.0) throw InvalidRate("intensity is negative inside window");
    if (lam > bound)
      throw InvalidBound("intensity exceeds the thinning bound");
    if (rng.uniform01() * bound < lam) pat.push(p);
  }
  return pat;
}

}  // namespace dtfe
