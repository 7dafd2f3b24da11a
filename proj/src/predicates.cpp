#include "dtfe/predicates.hpp"

#include <cmath>
#include <cstddef>
#include <limits>

// Exact sign evaluation follows the classic expansion-arithmetic scheme:
// every double is split losslessly into nonoverlapping components, sums
// and products of expansions stay exact, and the sign of an expansion is
// the sign of its largest-magnitude (last nonzero) component.  two_prod
// uses fma, which rounds once and therefore yields the exact residue.

namespace dtfe {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon() / 2;    // 2^-53
constexpr long double kEpsL =
    std::numeric_limits<long double>::epsilon() / 2;

constexpr double kOrientBound = (3.0 + 16.0 * kEps) * kEps;
constexpr long double kOrientBoundL = (3.0L + 16.0L * kEpsL) * kEpsL;
constexpr double kIncircleBound = (10.0 + 96.0 * kEps) * kEps;
constexpr long double kIncircleBoundL = (10.0L + 96.0L * kEpsL) * kEpsL;

inline void two_sum(double a, double b, double& hi, double& lo) {
  hi = a + b;
  const double bv = hi - a;
  lo = (a - (hi - bv)) + (b - bv);
}

inline void two_diff(double a, double b, double& hi, double& lo) {
  hi = a - b;
  const double bv = a - hi;
  lo = (a - (hi + bv)) + (bv - b);
}

inline void two_prod(double a, double b, double& hi, double& lo) {
  hi = a * b;
  lo = std::fma(a, b, -hi);
}

// Expansion: increasing-magnitude, nonoverlapping components.  Fixed
// capacity is fine; the exact incircle path peaks below 1200 terms.
struct Expansion {
  static constexpr std::size_t kCap = 1536;
  double c[kCap];
  std::size_t n = 0;

  void set(double hi, double lo) {
    n = 0;
    if (lo != 0.0) c[n++] = lo;
    if (hi != 0.0) c[n++] = hi;
  }
  int sign() const {
    if (n == 0) return 0;
    const double top = c[n - 1];
    return top > 0.0 ? 1 : (top < 0.0 ? -1 : 0);
  }
};

// out = e + f, zero components elided.  Standard merge-and-renormalize.
void expansion_add(const Expansion& e, const Expansion& f, Expansion& out) {
  double merged[Expansion::kCap];
  std::size_t m = 0, i = 0, j = 0;
  while (i < e.n && j < f.n) {
    double a = e.c[i], b = f.c[j];
    if ((a > b) == (a > -b))
      merged[m++] = b, ++j;
    else
      merged[m++] = a, ++i;
  }
  while (i < e.n) merged[m++] = e.c[i++];
  while (j < f.n) merged[m++] = f.c[j++];

  out.n = 0;
  if (m == 0) return;
  double q = merged[0];
  for (std::size_t k = 1; k < m; ++k) {
    double hi, lo;
    two_sum(q, merged[k], hi, lo);
    if (lo != 0.0) out.c[out.n++] = lo;
    q = hi;
  }
  if (q != 0.0 || out.n == 0) out.c[out.n++] = q;
}

// out = e * b for scalar b.
void expansion_scale(const Expansion& e, double b, Expansion& out) {
  out.n = 0;
  if (e.n == 0 || b == 0.0) return;
  double q, lo;
  two_prod(e.c[0], b, q, lo);
  if (lo != 0.0) out.c[out.n++] = lo;
  for (std::size_t i = 1; i < e.n; ++i) {
    double phi, plo, hi1, lo1;
    two_prod(e.c[i], b, phi, plo);
    two_sum(q, plo, hi1, lo1);
    if (lo1 != 0.0) out.c[out.n++] = lo1;
    two_sum(phi, hi1, q, lo1);
    if (lo1 != 0.0) out.c[out.n++] = lo1;
  }
  if (q != 0.0 || out.n == 0) out.c[out.n++] = q;
}

void expansion_mul(const Expansion& e, const Expansion& f, Expansion& out) {
  Expansion acc, term, next;
  acc.n = 0;
  for (std::size_t i = 0; i < f.n; ++i) {
    expansion_scale(e, f.c[i], term);
    expansion_add(acc, term, next);
    acc = next;
  }
  out = acc;
}

void expansion_negate(Expansion& e) {
  for (std::size_t i = 0; i < e.n; ++i) e.c[i] = -e.c[i];
}

template <typename T>
int filtered_orient(const T* a, const T* b, const T* c, T bound_coeff,
                    bool& decided) {
  const T detleft = (a[0] - c[0]) * (b[1] - c[1]);
  const T detright = (a[1] - c[1]) * (b[0] - c[0]);
  const T det = detleft - detright;
  T detsum;
  if (detleft > 0) {
    if (detright <= 0) {
      decided = true;
      return det > 0 ? 1 : (det < 0 ? -1 : 0);
    }
    detsum = detleft + detright;
  } else if (detleft < 0) {
    if (detright >= 0) {
      decided = true;
      return det > 0 ? 1 : (det < 0 ? -1 : 0);
    }
    detsum = -detleft - detright;
  } else {
    decided = true;
    return det > 0 ? 1 : (det < 0 ? -1 : 0);
  }
  const T errbound = bound_coeff * detsum;
  if (det > errbound || -det > errbound) {
    decided = true;
    return det > 0 ? 1 : -1;
  }
  decided = false;
  return 0;
}

int exact_orient(const double* a, const double* b, const double* c) {
  // det = ax*by - ax*cy - ay*bx + ay*cx + bx*cy - by*cx, all terms exact.
  Expansion acc, t, next;
  acc.n = 0;
  double hi, lo;
  const double p[6][2] = {{a[0], b[1]}, {a[0], c[1]}, {a[1], b[0]},
                          {a[1], c[0]}, {b[0], c[1]}, {b[1], c[0]}};
  const double sgn[6] = {1, -1, -1, 1, 1, -1};
  for (int i = 0; i < 6; ++i) {
    two_prod(p[i][0], p[i][1], hi, lo);
    t.set(hi, lo);
    if (sgn[i] < 0) expansion_negate(t);
    expansion_add(acc, t, next);
    acc = next;
  }
  return acc.sign();
}

template <typename T>
int filtered_incircle(const T* a, const T* b, const T* c, const T* d,
                      T bound_coeff, bool& decided) {
  const T adx = a[0] - d[0], ady = a[1] - d[1];
  const T bdx = b[0] - d[0], bdy = b[1] - d[1];
  const T cdx = c[0] - d[0], cdy = c[1] - d[1];

  const T bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
  const T alift = adx * adx + ady * ady;
  const T cdxady = cdx * ady, adxcdy = adx * cdy;
  const T blift = bdx * bdx + bdy * bdy;
  const T adxbdy = adx * bdy, bdxady = bdx * ady;
  const T clift = cdx * cdx + cdy * cdy;

  const T det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) +
                clift * (adxbdy - bdxady);

  const T perm = (std::abs(bdxcdy) + std::abs(cdxbdy)) * alift +
                 (std::abs(cdxady) + std::abs(adxcdy)) * blift +
                 (std::abs(adxbdy) + std::abs(bdxady)) * clift;
  const T errbound = bound_coeff * perm;
  if (det > errbound || -det > errbound) {
    decided = true;
    return det > 0 ? 1 : -1;
  }
  decided = false;
  return 0;
}

// Exact 3x3 determinant of rows (ai-di, |ai-di|^2); the translated rows
// are exact two-component expansions, so the whole evaluation is exact.
int exact_incircle(const double* a, const double* b, const double* c,
                   const double* d) {
  Expansion dx[3], dy[3];
  const double* pts[3] = {a, b, c};
  double hi, lo;
  for (int i = 0; i < 3; ++i) {
    two_diff(pts[i][0], d[0], hi, lo);
    dx[i].set(hi, lo);
    two_diff(pts[i][1], d[1], hi, lo);
    dy[i].set(hi, lo);
  }
  Expansion lift[3];
  for (int i = 0; i < 3; ++i) {
    Expansion sx, sy;
    expansion_mul(dx[i], dx[i], sx);
    expansion_mul(dy[i], dy[i], sy);
    expansion_add(sx, sy, lift[i]);
  }
  // minor_k = dx[i]*dy[j] - dx[j]*dy[i] for (i,j) skipping k.
  auto minor = [&](int i, int j, Expansion& out) {
    Expansion m1, m2;
    expansion_mul(dx[i], dy[j], m1);
    expansion_mul(dx[j], dy[i], m2);
    expansion_negate(m2);
    expansion_add(m1, m2, out);
  };
  Expansion m0, m1, m2;
  minor(1, 2, m0);  // cofactor of lift[0]
  minor(2, 0, m1);  // cofactor of lift[1]
  minor(0, 1, m2);  // cofactor of lift[2]

  Expansion t0, t1, t2, s01, det;
  expansion_mul(lift[0], m0, t0);
  expansion_mul(lift[1], m1, t1);
  expansion_mul(lift[2], m2, t2);
  expansion_add(t0, t1, s01);
  expansion_add(s01, t2, det);
  return det.sign();
}

}  // namespace

int orient2d_sign(const double* a, const double* b, const double* c) {
  bool decided = false;
  int s = filtered_orient<double>(a, b, c, kOrientBound, decided);
  if (decided) return s;
  const long double al[2] = {a[0], a[1]}, bl[2] = {b[0], b[1]},
                    cl[2] = {c[0], c[1]};
  s = filtered_orient<long double>(al, bl, cl, kOrientBoundL, decided);
  if (decided) return s;
  return exact_orient(a, b, c);
}

int incircle_sign(const double* a, const double* b, const double* c,
                  const double* d) {
  bool decided = false;
  int s = filtered_incircle<double>(a, b, c, d, kIncircleBound, decided);
  if (decided) return s;
  const long double al[2] = {a[0], a[1]}, bl[2] = {b[0], b[1]},
                    cl[2] = {c[0], c[1]}, dl[2] = {d[0], d[1]};
  s = filtered_incircle<long double>(al, bl, cl, dl, kIncircleBoundL, decided);
  if (decided) return s;
  return exact_incircle(a, b, c, d);
}

int cross_dir_sign(double dx, double dy, const double* a, const double* p) {
  // det = dx*py - dx*ay - dy*px + dy*ax
  const double t1 = dx * p[1], t2 = dx * a[1], t3 = dy * p[0], t4 = dy * a[0];
  const double det = (t1 - t2) - (t3 - t4);
  const double perm =
      std::abs(t1) + std::abs(t2) + std::abs(t3) + std::abs(t4);
  if (std::abs(det) > 8 * kEps * perm) return det > 0 ? 1 : -1;

  Expansion acc, t, next;
  acc.n = 0;
  double hi, lo;
  const double terms[4][2] = {{dx, p[1]}, {dx, a[1]}, {dy, p[0]}, {dy, a[0]}};
  const double sgn[4] = {1, -1, -1, 1};
  for (int i = 0; i < 4; ++i) {
    two_prod(terms[i][0], terms[i][1], hi, lo);
    t.set(hi, lo);
    if (sgn[i] < 0) expansion_negate(t);
    expansion_add(acc, t, next);
    acc = next;
  }
  return acc.sign();
}

}  // namespace dtfe
