#pragma once

#include "dtfe/geometry.hpp"
#include "dtfe/pointprocess.hpp"
#include "dtfe/quadrature.hpp"

namespace dtfe {

// First moment of the tessellation field at x0 on an interval window under
// a Poisson process, split by the configuration of the data point whose
// cell covers x0: both neighbours real, the single-point atom, or a window
// edge standing in on the left or right.  The terms sum to the exact mean;
// for a constant rate the sum collapses to the rate itself.
struct Mean1dTerms {
  double interior = 0.0;
  double empty_atom = 0.0;
  double left_border = 0.0;
  double right_border = 0.0;
  double total() const {
    return interior + empty_atom + left_border + right_border;
  }
};

Mean1dTerms dtfe_mean_1d(const IntensityFunction& intensity, const Window& w,
                         double x0, const QuadratureSpec& spec = {});

// Second moment at x0, same configuration split for the squared kernel
// contributions plus the cross term from pairs of points whose cells both
// cover x0.  The cross term vanishes at the window endpoints, where the
// remaining integrals diverge logarithmically; expect QuadratureFailure
// there rather than a value.
struct SecondMoment1dTerms {
  double interior = 0.0;
  double empty_atom = 0.0;
  double left_border = 0.0;
  double right_border = 0.0;
  double cross = 0.0;
  double total() const {
    return interior + empty_atom + left_border + right_border + cross;
  }
};

SecondMoment1dTerms dtfe_second_moment_1d(const IntensityFunction& intensity,
                                          const Window& w, double x0,
                                          const QuadratureSpec& spec = {});

double dtfe_variance_1d(const IntensityFunction& intensity, const Window& w,
                        double x0, const QuadratureSpec& spec = {});

// Large-window limit of Var / rate^2 at an interior point in dimension 1;
// equals 2 * (2 - pi^2/6).  It also equals the integral
// 2 * int_0^inf u exp(u) E1(u)^2 du, which tests verify by quadrature.
double excess_variance_limit_1d();

// Closed-form bound on the boundary-induced part of the second moment at
// the midpoint of an interval of halfwidth w under constant rate; decays
// to zero as rate * w grows.
double boundary_term_bound_1d(double rate, double halfwidth);

// Palm-expectation ratios in dimension 1 (independent of the rate):
// the self term  rate * E[1/|W0|] / rate^2  equals 1, and the neighbour
// term equals excess_variance_limit_1d().
double self_weight_moment_ratio_1d();
double neighbour_weight_moment_ratio_1d();

// Poisson mean and variance of the ball-count estimator at x0.
struct KernelMoments {
  double mean = 0.0;
  double variance = 0.0;
};

KernelMoments bd_moments_poisson(const IntensityFunction& intensity,
                                 const Window& w, const Point& x0, double h,
                                 const QuadratureSpec& spec = {});

// Poisson mean and variance of the mass-preserving ball estimator at x0.
KernelMoments kernel_k_moments_poisson(const IntensityFunction& intensity,
                                       const Window& w, const Point& x0,
                                       double h,
                                       const QuadratureSpec& spec = {});

// Distribution of the nearest data point left/right of x on an interval
// window: cdf in the closed window with an atom at the edge when no point
// falls on that side.
double nearest_left_cdf(const IntensityFunction& intensity, const Window& w,
                        double x, double t, const QuadratureSpec& spec = {});
double nearest_right_cdf(const IntensityFunction& intensity, const Window& w,
                         double x, double s, const QuadratureSpec& spec = {});
double nearest_left_atom(const IntensityFunction& intensity, const Window& w,
                         double x, const QuadratureSpec& spec = {});
double nearest_right_atom(const IntensityFunction& intensity, const Window& w,
                          double x, const QuadratureSpec& spec = {});

// Which estimator has the smaller interior Poisson variance at the given
// rate and bandwidth: +1 the tessellation field, -1 the ball count, 0 when
// the variance ratio sits within the relative indifference band.  The
// excess constant is the large-window Var/rate^2 limit for the dimension
// (closed form in d=1, estimated in d=2).
int interior_efficiency_verdict(int dim, double rate, double h,
                                double excess_constant, double band = 0.01);

}  // namespace dtfe
