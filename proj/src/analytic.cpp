#include "dtfe/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "dtfe/estimators.hpp"
#include "dtfe/special.hpp"

namespace dtfe {

namespace {

QuadratureSpec tighter(const QuadratureSpec& spec, double factor) {
  QuadratureSpec t = spec;
  t.rel_tol *= factor;
  t.abs_tol *= factor;
  return t;
}

// Cumulative mass between two abscissas.  Parametric intensities use
// their closed forms; custom callables go through a memoized primitive so
// nested quadrature does not re-integrate the same prefix thousands of
// times.
class Cumulative {
 public:
  Cumulative(const IntensityFunction& f, double origin,
             const QuadratureSpec& spec, EvalBudget* budget)
      : f_(f), spec_(tighter(spec, 0.1)), budget_(budget) {
    closed_form_ = f.is_constant() || f.is_affine1d();
    if (!closed_form_) memo_[origin] = 0.0;
  }

  double between(double u, double v) {
    if (closed_form_) return f_.cumulative(u, v);
    return at(v) - at(u);
  }

 private:
  double at(double x) {
    auto it = memo_.find(x);
    if (it != memo_.end()) return it->second;
    auto anchor = memo_.lower_bound(x);
    if (anchor == memo_.end()) {
      --anchor;
    } else if (anchor != memo_.begin()) {
      auto below = std::prev(anchor);
      if (x - below->first < anchor->first - x) anchor = below;
    }
    const double value =
        anchor->second + f_.cumulative(anchor->first, x, spec_, budget_);
    memo_.emplace(x, value);
    return value;
  }

  const IntensityFunction& f_;
  QuadratureSpec spec_;
  EvalBudget* budget_;
  bool closed_form_ = true;
  std::map<double, double> memo_;
};

void require_interval(const Window& w, double x0) {
  if (w.dim != 1)
    throw std::invalid_argument("moment formulas require an interval window");
  if (x0 < w.lo[0] || x0 > w.hi[0])
    throw std::invalid_argument("x0 must lie in the window");
}

// Integral of E1 over [0, x].  Concave with value 0 at 0, which keeps the
// three-term combination in the interior second moment nonnegative.
double e1_primitive(double x) {
  if (x <= 0.0) return 0.0;
  return x * exp_integral_e1(x) + 1.0 - std::exp(-x);
}

}  // namespace

Mean1dTerms dtfe_mean_1d(const IntensityFunction& intensity, const Window& w,
                         double x0, const QuadratureSpec& spec) {
  require_interval(w, x0);
  const double a = w.lo[0], b = w.hi[0];
  EvalBudget budget(spec.max_evals);
  Cumulative mass(intensity, a, spec, &budget);
  const QuadratureSpec inner = tighter(spec, 0.1);

  Mean1dTerms m;
  const double total_mass = mass.between(a, b);
  m.empty_atom = total_mass * std::exp(-total_mass) / (b - a);
  m.left_border = integrate(
      [&](double s) {
        const double q = mass.between(a, s);
        return q * intensity.value1d(s) * std::exp(-q) / (s - a);
      },
      x0, b, spec, &budget);
  m.right_border = integrate(
      [&](double t) {
        const double q = mass.between(t, b);
        return q * intensity.value1d(t) * std::exp(-q) / (b - t);
      },
      a, x0, spec, &budget);
  m.interior = integrate(
      [&](double t) {
        return intensity.value1d(t) *
               integrate(
                   [&](double s) {
                     const double q = mass.between(t, s);
                     return q * intensity.value1d(s) * std::exp(-q) /
                            (s - t);
                   },
                   x0, b, inner, &budget);
      },
      a, x0, spec, &budget);
  return m;
}

SecondMoment1dTerms dtfe_second_moment_1d(const IntensityFunction& intensity,
                                          const Window& w, double x0,
                                          const QuadratureSpec& spec) {
  require_interval(w, x0);
  const double a = w.lo[0], b = w.hi[0];
  EvalBudget budget(spec.max_evals);
  Cumulative mass(intensity, a, spec, &budget);
  const QuadratureSpec inner = tighter(spec, 0.1);
  const QuadratureSpec inner2 = tighter(spec, 0.01);

  SecondMoment1dTerms s2;
  const double total_mass = mass.between(a, b);
  s2.empty_atom =
      total_mass * std::exp(-total_mass) / ((b - a) * (b - a));
  s2.left_border = integrate(
      [&](double s) {
        const double q = mass.between(a, s);
        return q * intensity.value1d(s) * std::exp(-q) /
               ((s - a) * (s - a));
      },
      x0, b, spec, &budget);
  s2.right_border = integrate(
      [&](double t) {
        const double q = mass.between(t, b);
        return q * intensity.value1d(t) * std::exp(-q) /
               ((b - t) * (b - t));
      },
      a, x0, spec, &budget);
  if (intensity.is_constant()) {
    // In gap form the nested integral collapses to the E1 primitive:
    // rate^2 (G(rate (x0-a)) + G(rate (b-x0)) - G(rate (b-a))) with
    // G the integral of E1 from zero.
    const double rate = intensity.constant_rate();
    s2.interior = rate * rate *
                  (e1_primitive(rate * (x0 - a)) +
                   e1_primitive(rate * (b - x0)) -
                   e1_primitive(rate * (b - a)));
  } else if (x0 > a && x0 < b) {
    // Log gap variables: the reciprocal-square gap layer near t = s = x0
    // becomes an O(1)-wide smooth transition, so the quadrature no longer
    // needs unbounded refinement as the outer abscissa approaches x0.
    const double pu_hi = std::log(x0 - a);
    const double qv_hi = std::log(b - x0);
    s2.interior = integrate(
        [&](double u) {
          const double p = std::exp(u);
          const double t = x0 - p;
          return p * intensity.value1d(t) *
                 integrate(
                     [&](double v) {
                       const double g = p + std::exp(v);
                       const double s = t + g;
                       const double q = mass.between(t, s);
                       return std::exp(v) * q * intensity.value1d(s) *
                              std::exp(-q) / (g * g);
                     },
                     qv_hi - 50.0, qv_hi, inner, &budget);
        },
        pu_hi - 50.0, pu_hi, spec, &budget);
  }

  // Cross term: the points t < x0 < s flanking x0 have cells (l, s) and
  // (t, r); l and r are conditionally independent, each a nearest
  // neighbour with a window-edge atom.
  // The factors take the gap s - t separately: near the corner both gap
  // variables underflow the spacing of x0, so recovering the gap from the
  // rounded coordinates would collapse it to zero.
  std::function<double(double, double, double)> left_factor, right_factor;
  if (intensity.is_constant()) {
    // closed form via the scaled exponential integral
    const double rate = intensity.constant_rate();
    left_factor = [=](double t, double s, double gap) {
      const double damp = std::exp(-rate * (t - a));
      return rate * (exp_integral_e1_scaled(rate * gap) -
                     exp_integral_e1_scaled(rate * (s - a)) * damp) +
             damp / (s - a);
    };
    right_factor = [=](double t, double s, double gap) {
      const double damp = std::exp(-rate * (b - s));
      return rate * (exp_integral_e1_scaled(rate * gap) -
                     exp_integral_e1_scaled(rate * (b - t)) * damp) +
             damp / (b - t);
    };
  } else {
    left_factor = [&](double t, double s, double gap) {
      const double tail =
          t > a ? integrate(
                      [&](double u) {
                        return intensity.value1d(u) *
                               std::exp(-mass.between(u, t)) /
                               ((t - u) + gap);
                      },
                      a, t, inner2, &budget)
                : 0.0;
      return tail + std::exp(-mass.between(a, t)) / (s - a);
    };
    right_factor = [&](double t, double s, double gap) {
      const double tail =
          s < b ? integrate(
                      [&](double v) {
                        return intensity.value1d(v) *
                               std::exp(-mass.between(s, v)) /
                               ((v - s) + gap);
                      },
                      s, b, inner2, &budget)
                : 0.0;
      return tail + std::exp(-mass.between(s, b)) / (b - t);
    };
  }
  if (x0 > a && x0 < b) {
    // Same log gap substitution: the factors grow only logarithmically at
    // vanishing gaps and the Jacobian damps the corner smoothly.
    const double pu_hi = std::log(x0 - a);
    const double qv_hi = std::log(b - x0);
    s2.cross =
        2.0 * integrate(
                  [&](double u) {
                    const double p = std::exp(u);
                    const double t = x0 - p;
                    return p * intensity.value1d(t) *
                           integrate(
                               [&](double v) {
                                 const double q = std::exp(v);
                                 const double s = x0 + q;
                                 const double gap = p + q;
                                 return q * intensity.value1d(s) *
                                        std::exp(-mass.between(t, s)) *
                                        left_factor(t, s, gap) *
                                        right_factor(t, s, gap);
                               },
                               qv_hi - 50.0, qv_hi, inner, &budget);
                  },
                  pu_hi - 50.0, pu_hi, spec, &budget);
  }
  return s2;
}

double dtfe_variance_1d(const IntensityFunction& intensity, const Window& w,
                        double x0, const QuadratureSpec& spec) {
  const double m = dtfe_mean_1d(intensity, w, x0, spec).total();
  const double s2 = dtfe_second_moment_1d(intensity, w, x0, spec).total();
  return s2 - m * m;
}

double excess_variance_limit_1d() {
  return 2.0 * (2.0 - std::numbers::pi * std::numbers::pi / 6.0);
}

double boundary_term_bound_1d(double rate, double halfwidth) {
  const double u = rate * halfwidth;
  if (!(u > 0.0))
    throw std::invalid_argument("boundary bound needs rate * halfwidth > 0");
  const double e1 = std::exp(-u), e2 = std::exp(-2.0 * u);
  return e1 * kEulerGamma + (e1 + e2) * std::log(u) -
         e2 * std::log(2.0 * u) + exp_integral_e1(u) * (1.0 + e1) -
         exp_integral_e1(2.0 * u);
}

double self_weight_moment_ratio_1d() { return 1.0; }

double neighbour_weight_moment_ratio_1d() {
  return excess_variance_limit_1d();
}

namespace {

// Integral of fn over ball(x0, h) clipped to a rectangle window.  The
// outer abscissa is sine mapped so the chord loses its vertical tangents
// at the ball's horizontal extremes, and both passes split where the
// clipped geometry kinks: at the vertical lines where balls start to
// touch a side edge, at the clip lines' circle crossings, and at the
// corner circles.
template <class F>
double ball_region_integral(F&& fn, const Window& w, const Point& x0,
                            double h, const QuadratureSpec& spec,
                            const QuadratureSpec& inner, EvalBudget* budget) {
  const double lo = std::max(w.lo[0], x0[0] - h);
  const double hi = std::min(w.hi[0], x0[0] + h);
  if (lo >= hi) return 0.0;
  std::vector<double> cuts{lo, hi};
  const auto push_cut = [&](double c) {
    if (c > lo && c < hi) cuts.push_back(c);
  };
  for (const double c : {w.lo[0] + h, w.hi[0] - h}) push_cut(c);
  for (const double y : {w.lo[1], w.hi[1]}) {
    const double dy = y - x0[1];
    if (std::abs(dy) < h) {
      const double off = std::sqrt(h * h - dy * dy);
      push_cut(x0[0] - off);
      push_cut(x0[0] + off);
    }
  }
  std::sort(cuts.begin(), cuts.end());

  const auto strip = [&](double x) {
    const double dx = x - x0[0];
    const double half = std::sqrt(std::max(0.0, h * h - dx * dx));
    const double ylo = std::max(w.lo[1], x0[1] - half);
    const double yhi = std::min(w.hi[1], x0[1] + half);
    if (ylo >= yhi) return 0.0;
    std::vector<double> yc{ylo, yhi};
    const auto push_yc = [&](double c) {
      if (c > ylo && c < yhi) yc.push_back(c);
    };
    for (const double c : {w.lo[1] + h, w.hi[1] - h}) push_yc(c);
    for (const double cx : {w.lo[0], w.hi[0]}) {
      const double ddx = x - cx;
      if (std::abs(ddx) < h) {
        const double off = std::sqrt(h * h - ddx * ddx);
        for (const double cy : {w.lo[1], w.hi[1]}) {
          push_yc(cy - off);
          push_yc(cy + off);
        }
      }
    }
    std::sort(yc.begin(), yc.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < yc.size(); ++i)
      total += integrate([&](double y) { return fn(x, y); }, yc[i],
                         yc[i + 1], inner, budget);
    return total;
  };

  const auto to_theta = [&](double x) {
    return std::asin(std::clamp((x - x0[0]) / h, -1.0, 1.0));
  };
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    total += integrate(
        [&](double theta) {
          const double x = x0[0] + h * std::sin(theta);
          return strip(x) * h * std::cos(theta);
        },
        to_theta(cuts[i]), to_theta(cuts[i + 1]), spec, budget);
  return total;
}

// Integral of the intensity over ball(x0, h) clipped to the window.
double ball_mass(const IntensityFunction& intensity, const Window& w,
                 const Point& x0, double h, const QuadratureSpec& spec,
                 EvalBudget* budget) {
  if (w.dim == 1) {
    const double lo = std::max(w.lo[0], x0[0] - h);
    const double hi = std::min(w.hi[0], x0[0] + h);
    if (lo >= hi) return 0.0;
    return intensity.cumulative(lo, hi, spec, budget);
  }
  if (intensity.is_constant())
    return intensity.constant_rate() * ball_window_volume(x0, h, w);
  const QuadratureSpec inner = tighter(spec, 0.1);
  return ball_region_integral(
      [&](double x, double y) { return intensity({x, y}); }, w, x0, h, spec,
      inner, budget);
}

}  // namespace

KernelMoments bd_moments_poisson(const IntensityFunction& intensity,
                                 const Window& w, const Point& x0, double h,
                                 const QuadratureSpec& spec) {
  EvalBudget budget(spec.max_evals);
  const double vol = ball_window_volume(x0, h, w);
  if (!(vol > 0.0))
    throw std::invalid_argument("bd_moments: ball misses the window");
  const double m = ball_mass(intensity, w, x0, h, spec, &budget);
  return {m / vol, m / (vol * vol)};
}

KernelMoments kernel_k_moments_poisson(const IntensityFunction& intensity,
                                       const Window& w, const Point& x0,
                                       double h, const QuadratureSpec& spec) {
  EvalBudget budget(spec.max_evals);
  KernelMoments out;
  const QuadratureSpec inner = tighter(spec, 0.1);
  const double lo = std::max(w.lo[0], x0[0] - h);
  const double hi = std::min(w.hi[0], x0[0] + h);
  if (lo >= hi) throw std::invalid_argument("kernel moments: empty overlap");

  if (w.dim == 1) {
    // split at the points where the clipped ball volume changes shape
    std::vector<double> cuts{lo, hi};
    for (const double c : {w.lo[0] + h, w.hi[0] - h})
      if (c > lo && c < hi) cuts.push_back(c);
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      out.mean += integrate(
          [&](double x) {
            const double v = ball_window_volume({x, 0.0}, h, w);
            return intensity.value1d(x) / v;
          },
          cuts[i], cuts[i + 1], spec, &budget);
      out.variance += integrate(
          [&](double x) {
            const double v = ball_window_volume({x, 0.0}, h, w);
            return intensity.value1d(x) / (v * v);
          },
          cuts[i], cuts[i + 1], spec, &budget);
    }
    return out;
  }

  auto moment = [&](int power) {
    return ball_region_integral(
        [&](double x, double y) {
          const double v = ball_window_volume({x, y}, h, w);
          return intensity({x, y}) / (power == 1 ? v : v * v);
        },
        w, x0, h, spec, inner, &budget);
  };
  out.mean = moment(1);
  out.variance = moment(2);
  return out;
}

double nearest_left_cdf(const IntensityFunction& intensity, const Window& w,
                        double x, double t, const QuadratureSpec& spec) {
  require_interval(w, x);
  if (t < w.lo[0]) return 0.0;
  if (t >= x) return 1.0;
  EvalBudget budget(spec.max_evals);
  return std::exp(-intensity.cumulative(t, x, spec, &budget));
}

double nearest_right_cdf(const IntensityFunction& intensity, const Window& w,
                         double x, double s, const QuadratureSpec& spec) {
  require_interval(w, x);
  if (s < x) return 0.0;
  if (s >= w.hi[0]) return 1.0;
  EvalBudget budget(spec.max_evals);
  return 1.0 - std::exp(-intensity.cumulative(x, s, spec, &budget));
}

double nearest_left_atom(const IntensityFunction& intensity, const Window& w,
                         double x, const QuadratureSpec& spec) {
  require_interval(w, x);
  EvalBudget budget(spec.max_evals);
  return std::exp(-intensity.cumulative(w.lo[0], x, spec, &budget));
}

double nearest_right_atom(const IntensityFunction& intensity, const Window& w,
                          double x, const QuadratureSpec& spec) {
  require_interval(w, x);
  EvalBudget budget(spec.max_evals);
  return std::exp(-intensity.cumulative(x, w.hi[0], spec, &budget));
}

int interior_efficiency_verdict(int dim, double rate, double h,
                                double excess_constant, double band) {
  if (!(rate > 0.0) || !(h > 0.0) || !(excess_constant > 0.0))
    throw std::invalid_argument("efficiency verdict needs positive inputs");
  // variance ratio tessellation/ball: c_d * rate * |b(0, h)|
  const double ratio =
      excess_constant * rate * unit_ball_volume(dim) * std::pow(h, dim);
  if (ratio < 1.0 - band) return +1;
  if (ratio > 1.0 + band) return -1;
  return 0;
}

}  // namespace dtfe
