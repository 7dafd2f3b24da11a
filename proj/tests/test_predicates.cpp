#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <random>

#include "dtfe/predicates.hpp"

// Oracle: every finite double is an integer multiple of 2^-1074, so scaling
// by 2^1100 and evaluating the determinants in arbitrary-precision integers
// gives the exact sign with no rounding anywhere.

namespace {

using boost::multiprecision::cpp_int;
using Point = std::array<double, 2>;

int orient(const Point& a, const Point& b, const Point& c) {
  return dtfe::orient2d_sign(a.data(), b.data(), c.data());
}

int incircle(const Point& a, const Point& b, const Point& c, const Point& d) {
  return dtfe::incircle_sign(a.data(), b.data(), c.data(), d.data());
}

int cross_dir(double dx, double dy, const Point& a, const Point& p) {
  return dtfe::cross_dir_sign(dx, dy, a.data(), p.data());
}

cpp_int scaled(double x) {
  REQUIRE(std::isfinite(x));
  if (x == 0.0) return 0;
  int exp = 0;
  const double m = std::frexp(x, &exp);
  cpp_int v = static_cast<long long>(std::ldexp(m, 53));
  const int shift = 1100 + exp - 53;
  REQUIRE(shift >= 0);
  return v << shift;
}

int sign_of(const cpp_int& v) { return v == 0 ? 0 : (v > 0 ? 1 : -1); }

int oracle_orient(const Point& a, const Point& b, const Point& c) {
  const cpp_int ax = scaled(a[0]), ay = scaled(a[1]);
  const cpp_int bx = scaled(b[0]), by = scaled(b[1]);
  const cpp_int cx = scaled(c[0]), cy = scaled(c[1]);
  return sign_of((ax - cx) * (by - cy) - (ay - cy) * (bx - cx));
}

int oracle_incircle(const Point& a, const Point& b, const Point& c,
                    const Point& d) {
  const cpp_int adx = scaled(a[0]) - scaled(d[0]);
  const cpp_int ady = scaled(a[1]) - scaled(d[1]);
  const cpp_int bdx = scaled(b[0]) - scaled(d[0]);
  const cpp_int bdy = scaled(b[1]) - scaled(d[1]);
  const cpp_int cdx = scaled(c[0]) - scaled(d[0]);
  const cpp_int cdy = scaled(c[1]) - scaled(d[1]);
  const cpp_int alift = adx * adx + ady * ady;
  const cpp_int blift = bdx * bdx + bdy * bdy;
  const cpp_int clift = cdx * cdx + cdy * cdy;
  return sign_of(alift * (bdx * cdy - bdy * cdx) +
                 blift * (cdx * ady - cdy * adx) +
                 clift * (adx * bdy - ady * bdx));
}

int oracle_cross_dir(double dx, double dy, const Point& a, const Point& p) {
  return sign_of(scaled(dx) * (scaled(p[1]) - scaled(a[1])) -
                 scaled(dy) * (scaled(p[0]) - scaled(a[0])));
}

}  // namespace

TEST_CASE("orientation on exact inputs") {
  CHECK(orient({0, 0}, {1, 0}, {0, 1}) == 1);
  CHECK(orient({0, 0}, {0, 1}, {1, 0}) == -1);
  CHECK(orient({0, 0}, {1, 1}, {2, 2}) == 0);
  CHECK(orient({3, 3}, {3, 3}, {1, 7}) == 0);
}

TEST_CASE("orientation matches the integer oracle on random triples") {
  std::mt19937_64 rng(20240301);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int it = 0; it < 2000; ++it) {
    const Point a{u(rng), u(rng)}, b{u(rng), u(rng)}, c{u(rng), u(rng)};
    CHECK(orient(a, b, c) == oracle_orient(a, b, c));
    CHECK(orient(b, a, c) == -oracle_orient(a, b, c));
    CHECK(orient(b, c, a) == oracle_orient(a, b, c));
  }
}

TEST_CASE("orientation near-degenerate ulp grid") {
  // Points one ulp-step apart around an exactly collinear configuration.
  const Point a{12.0, 12.0}, b{24.0, 24.0};
  const double eps = std::ldexp(1.0, -52);
  for (int i = -8; i <= 8; ++i) {
    for (int j = -8; j <= 8; ++j) {
      const Point c{0.5 + i * eps, 0.5 + j * eps};
      CHECK(orient(a, b, c) == oracle_orient(a, b, c));
    }
  }
}

TEST_CASE("incircle on exact inputs") {
  // Unit circle through (1,0),(0,1),(-1,0); origin inside, (2,0) outside.
  const Point a{1, 0}, b{0, 1}, c{-1, 0};
  REQUIRE(orient(a, b, c) == 1);
  CHECK(incircle(a, b, c, {0, 0}) == 1);
  CHECK(incircle(a, b, c, {2, 0}) == -1);
  CHECK(incircle(a, b, c, {0, -1}) == 0);
}

TEST_CASE("incircle exact zeros on an integer circle") {
  // All points lie on x^2 + y^2 = 25; every quadruple is exactly cocircular.
  const Point pts[] = {{5, 0}, {0, 5}, {-5, 0}, {0, -5},
                       {3, 4}, {4, 3}, {-3, 4}, {4, -3}};
  const int n = 8;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
          if (orient(pts[i], pts[j], pts[k]) == 0) continue;
          CHECK(incircle(pts[i], pts[j], pts[k], pts[l]) == 0);
        }
}

TEST_CASE("incircle matches the integer oracle on random quadruples") {
  std::mt19937_64 rng(20240302);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int it = 0; it < 1500; ++it) {
    const Point a{u(rng), u(rng)}, b{u(rng), u(rng)};
    const Point c{u(rng), u(rng)}, d{u(rng), u(rng)};
    CHECK(incircle(a, b, c, d) == oracle_incircle(a, b, c, d));
  }
}

TEST_CASE("incircle near-degenerate ulp grid") {
  // Three fixed points on the unit circle, the fourth scanned one ulp at a
  // time across the circle boundary near (0,-1).
  const Point a{1, 0}, b{0, 1}, c{-1, 0};
  const double eps = std::ldexp(1.0, -52);
  for (int i = -6; i <= 6; ++i) {
    for (int j = -6; j <= 6; ++j) {
      const Point d{0.0 + i * eps, -1.0 + j * eps};
      CHECK(incircle(a, b, c, d) == oracle_incircle(a, b, c, d));
    }
  }
}

TEST_CASE("incircle swap antisymmetry") {
  std::mt19937_64 rng(20240303);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int it = 0; it < 500; ++it) {
    const Point a{u(rng), u(rng)}, b{u(rng), u(rng)};
    const Point c{u(rng), u(rng)}, d{u(rng), u(rng)};
    const int s = incircle(a, b, c, d);
    CHECK(incircle(b, a, c, d) == -s);
    CHECK(incircle(a, c, b, d) == -s);
    CHECK(incircle(b, c, a, d) == s);
  }
}

TEST_CASE("direction cross sign matches the integer oracle") {
  std::mt19937_64 rng(20240304);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  const double dirs[][2] = {{0.0, 1.0}, {-0.8, -0.6}, {0.8, -0.6}};
  for (int it = 0; it < 1000; ++it) {
    const Point a{u(rng), u(rng)}, p{u(rng), u(rng)};
    for (const auto& d : dirs)
      CHECK(cross_dir(d[0], d[1], a, p) ==
            oracle_cross_dir(d[0], d[1], a, p));
  }
  // Exactly parallel displacement gives zero.
  CHECK(cross_dir(0.0, 1.0, {2.0, 1.0}, {2.0, 5.0}) == 0);
  CHECK(cross_dir(-0.8, -0.6, {0.0, 0.0}, {-1.6, -1.2}) == 0);
}
