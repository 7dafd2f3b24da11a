#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "dtfe/pointprocess.hpp"

namespace {

using dtfe::IntensityFunction;
using dtfe::PointPattern;
using dtfe::Rng;
using dtfe::Window;

bool patterns_equal(const PointPattern& a, const PointPattern& b) {
  return a.dim == b.dim && a.pts == b.pts && a.ghost == b.ghost;
}

}  // namespace

TEST_CASE("intensity parsing and bounds") {
  const auto c = IntensityFunction::parse("constant{5}");
  CHECK(c.is_constant());
  CHECK(c.constant_rate() == 5.0);
  CHECK(c({0.3, 0.0}) == 5.0);

  const auto a = IntensityFunction::parse("affine1d{1.5, 0.25}");
  CHECK(a.is_affine1d());
  CHECK(a.value1d(2.0) == doctest::Approx(2.0));
  const Window w = Window::interval(0.0, 4.0);
  CHECK(a.upper_bound(w) == doctest::Approx(2.5));
  CHECK(a.lower_bound(w) == doctest::Approx(1.5));
  CHECK(a.cumulative(0.0, 4.0) == doctest::Approx(1.5 * 4 + 0.125 * 16));
  CHECK(a.cumulative(4.0, 0.0) == doctest::Approx(-(1.5 * 4 + 0.125 * 16)));

  CHECK_THROWS_AS((void)IntensityFunction::parse("constant{}"),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)IntensityFunction::parse("parabola{1}"),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)IntensityFunction::parse("affine1d{1}"),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)IntensityFunction::constant(-2.0), dtfe::InvalidRate);

  // Custom callables integrate numerically and refuse closed-form bounds.
  const auto f = IntensityFunction::custom(
      [](const dtfe::Point& p) { return 1.0 + p[0] * p[0]; });
  CHECK(f.cumulative(0.0, 3.0) == doctest::Approx(3.0 + 9.0).epsilon(1e-9));
  CHECK_THROWS_AS((void)f.upper_bound(w), std::invalid_argument);
  CHECK_THROWS_AS((void)f.constant_rate(), std::logic_error);
}

TEST_CASE("rng streams are deterministic and distinct") {
  Rng a(42, 7), b(42, 7), c(42, 8);
  std::vector<double> va, vb, vc;
  for (int i = 0; i < 64; ++i) {
    va.push_back(a.uniform01());
    vb.push_back(b.uniform01());
    vc.push_back(c.uniform01());
  }
  CHECK(va == vb);
  CHECK(va != vc);
  for (double v : va) {
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
  }
}

TEST_CASE("poisson counts follow the count law") {
  // lambda |A| = 7 * 2 = 14; chi-square over pooled count bins plus moment
  // checks, all under a fixed seed.
  const Window w = Window::interval(0.0, 2.0);
  const long reps = 4000;
  const double mean_target = 14.0;
  double sum = 0.0, sum2 = 0.0;
  std::vector<long> counts;
  for (long r = 0; r < reps; ++r) {
    Rng rng(501, static_cast<std::uint64_t>(r));
    const auto pat = dtfe::sample_homogeneous_poisson(7.0, w, rng);
    for (const auto& p : pat.pts) {
      CHECK(p[0] >= 0.0);
      CHECK(p[0] <= 2.0);
    }
    counts.push_back(static_cast<long>(pat.size()));
    sum += static_cast<double>(pat.size());
    sum2 += static_cast<double>(pat.size()) * static_cast<double>(pat.size());
  }
  const double mean = sum / reps;
  const double var = (sum2 - reps * mean * mean) / (reps - 1);
  const double se_mean = std::sqrt(mean_target / reps);
  CHECK(std::abs(mean - mean_target) < 4.0 * se_mean);
  // Var(s^2) for Poisson ~ (2 lambda^2 + lambda)/R; allow 5 sigma.
  const double se_var =
      std::sqrt((2.0 * mean_target * mean_target + mean_target) / reps);
  CHECK(std::abs(var - mean_target) < 5.0 * se_var);
}

TEST_CASE("sub-window counts pass a chi-square fit") {
  // Counts in [0, 0.5) under rate 7 are Poisson(3.5).  Bins 0..9 and a tail
  // bin give df = 10; the 0.999 quantile of chi-square(10) is 29.59.
  const Window w = Window::interval(0.0, 2.0);
  const long reps = 4000;
  std::vector<long> observed(11, 0);
  for (long r = 0; r < reps; ++r) {
    Rng rng(502, static_cast<std::uint64_t>(r));
    const auto pat = dtfe::sample_homogeneous_poisson(7.0, w, rng);
    long k = 0;
    for (const auto& p : pat.pts) k += p[0] < 0.5 ? 1 : 0;
    observed[static_cast<std::size_t>(std::min<long>(k, 10))] += 1;
  }
  const double lam = 3.5;
  double chi2 = 0.0, tail_p = 1.0, pk = std::exp(-lam);
  for (int k = 0; k < 10; ++k) {
    const double expect = reps * pk;
    tail_p -= pk;
    REQUIRE(expect > 5.0);
    chi2 += (observed[k] - expect) * (observed[k] - expect) / expect;
    pk *= lam / (k + 1);
  }
  const double tail_expect = reps * tail_p;
  chi2 += (observed[10] - tail_expect) * (observed[10] - tail_expect) /
          tail_expect;
  CHECK(chi2 < 29.59);
}

TEST_CASE("disjoint windows have independent counts") {
  const Window w = Window::interval(-1.0, 1.0);
  const long reps = 4000;
  double sa = 0, sb = 0, sab = 0;
  for (long r = 0; r < reps; ++r) {
    Rng rng(503, static_cast<std::uint64_t>(r));
    const auto pat = dtfe::sample_homogeneous_poisson(6.0, w, rng);
    double ca = 0, cb = 0;
    for (const auto& p : pat.pts) {
      if (p[0] < 0.0) ca += 1;
      else cb += 1;
    }
    sa += ca;
    sb += cb;
    sab += ca * cb;
  }
  const double cov = sab / reps - (sa / reps) * (sb / reps);
  // Var(ca*cb) for independent Poisson(6): lam^2(2lam+1) + ... ~ 470; the
  // standard error of the covariance is about sqrt(470/R) ~ 0.35.
  CHECK(std::abs(cov) < 4.0 * 0.35);
}

TEST_CASE("void probabilities are exponential in the measure") {
  const Window w = Window::interval(0.0, 3.0);
  const long reps = 6000;
  long voids = 0;
  for (long r = 0; r < reps; ++r) {
    Rng rng(504, static_cast<std::uint64_t>(r));
    const auto pat = dtfe::sample_homogeneous_poisson(2.0, w, rng);
    bool empty = true;
    for (const auto& p : pat.pts)
      empty = empty && !(p[0] >= 1.0 && p[0] <= 1.8);
    voids += empty ? 1 : 0;
  }
  const double target = std::exp(-2.0 * 0.8);
  const double se = std::sqrt(target * (1.0 - target) / reps);
  CHECK(std::abs(static_cast<double>(voids) / reps - target) < 4.0 * se);
}

TEST_CASE("2-d sampling fills the window uniformly") {
  const Window w = Window::rect(0.0, 2.0, 0.0, 1.0);
  long total = 0, in_left = 0;
  for (long r = 0; r < 3000; ++r) {
    Rng rng(505, static_cast<std::uint64_t>(r));
    const auto pat = dtfe::sample_homogeneous_poisson(5.0, w, rng);
    for (const auto& p : pat.pts) {
      CHECK(w.contains(p));
      total += 1;
      in_left += p[0] < 1.0 ? 1 : 0;
    }
  }
  const double mean = static_cast<double>(total) / 3000.0;
  CHECK(std::abs(mean - 10.0) < 4.0 * std::sqrt(10.0 / 3000.0));
  const double frac = static_cast<double>(in_left) / total;
  CHECK(std::abs(frac - 0.5) < 4.0 * std::sqrt(0.25 / total));
}

TEST_CASE("thinning a constant custom intensity matches the homogeneous law") {
  const Window w = Window::interval(0.0, 2.0);
  const auto f =
      IntensityFunction::custom([](const dtfe::Point&) { return 3.0; });
  double sum = 0.0;
  const long reps = 3000;
  for (long r = 0; r < reps; ++r) {
    Rng rng(506, static_cast<std::uint64_t>(r));
    const auto pat = dtfe::sample_inhomogeneous_poisson(f, 3.0, w, rng);
    sum += static_cast<double>(pat.size());
  }
  CHECK(std::abs(sum / reps - 6.0) < 4.0 * std::sqrt(6.0 / reps));
}

TEST_CASE("affine thinning matches the cumulative mass") {
  const Window w = Window::interval(0.0, 4.0);
  const auto f = IntensityFunction::affine1d(1.0, 0.5);
  const double mass = f.cumulative(0.0, 4.0);  // 4 + 4 = 8
  double sum = 0.0;
  long left = 0, total = 0;
  const long reps = 4000;
  for (long r = 0; r < reps; ++r) {
    Rng rng(507, static_cast<std::uint64_t>(r));
    const auto pat = dtfe::sample_inhomogeneous_poisson(f, 3.0, w, rng);
    sum += static_cast<double>(pat.size());
    for (const auto& p : pat.pts) {
      total += 1;
      left += p[0] < 2.0 ? 1 : 0;
    }
  }
  CHECK(std::abs(sum / reps - mass) < 4.0 * std::sqrt(mass / reps));
  // Mass on [0,2) is 3 of 8.
  const double frac = static_cast<double>(left) / total;
  CHECK(std::abs(frac - 3.0 / 8.0) < 4.0 * std::sqrt(0.25 / total));
}

TEST_CASE("thinning validates the bound and the rate") {
  const Window w = Window::interval(0.0, 10.0);
  const auto f = IntensityFunction::affine1d(1.0, 1.0);  // up to 11 on w
  bool threw = false;
  for (long r = 0; r < 50 && !threw; ++r) {
    Rng rng(508, static_cast<std::uint64_t>(r));
    try {
      (void)dtfe::sample_inhomogeneous_poisson(f, 5.0, w, rng);
    } catch (const dtfe::InvalidBound&) {
      threw = true;
    }
  }
  CHECK(threw);

  const auto neg = IntensityFunction::affine1d(-5.0, 1.0);
  threw = false;
  for (long r = 0; r < 50 && !threw; ++r) {
    Rng rng(509, static_cast<std::uint64_t>(r));
    try {
      (void)dtfe::sample_inhomogeneous_poisson(neg, 6.0, w, rng);
    } catch (const dtfe::InvalidRate&) {
      threw = true;
    }
  }
  CHECK(threw);

  CHECK_THROWS_AS((void)[&] {
    Rng rng(510, 0);
    return dtfe::sample_inhomogeneous_poisson(f, 0.0, w, rng);
  }(), dtfe::InvalidBound);
}

TEST_CASE("sampling is reproducible per stream") {
  const Window w = Window::rect(0.0, 1.0, 0.0, 1.0);
  Rng a(511, 3), b(511, 3);
  const auto pa = dtfe::sample_homogeneous_poisson(20.0, w, a);
  const auto pb = dtfe::sample_homogeneous_poisson(20.0, w, b);
  CHECK(patterns_equal(pa, pb));
  Rng c(511, 4);
  const auto pc = dtfe::sample_homogeneous_poisson(20.0, w, c);
  CHECK(!patterns_equal(pa, pc));
}

TEST_CASE("poisson sampler handles large means") {
  Rng rng(512, 0);
  double sum = 0.0;
  const int reps = 200;
  for (int i = 0; i < reps; ++i) sum += static_cast<double>(rng.poisson(800.0));
  CHECK(std::abs(sum / reps - 800.0) < 4.0 * std::sqrt(800.0 / reps));
  CHECK(rng.poisson(0.0) == 0);
}
