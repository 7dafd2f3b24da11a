#pragma once

namespace dtfe {

// Sign predicates for planar Delaunay construction.
//
// Each predicate is evaluated in three stages: a filtered double pass,
// a filtered long double pass, and finally exact expansion arithmetic.
// The filters compare the floating-point result against a forward error
// bound; only results that cannot be trusted fall through to the next
// stage, so the exact path runs only near degeneracy.

// Sign of det[b - a, c - a]: +1 when (a, b, c) wind counterclockwise,
// -1 clockwise, 0 exactly collinear.
int orient2d_sign(const double* a, const double* b, const double* c);

// Sign of the 4x4 in-circle determinant: +1 when d lies strictly inside
// the circle through a, b, c (taken counterclockwise), -1 strictly
// outside, 0 exactly on the circle.  For a clockwise triple the sign
// flips.
int incircle_sign(const double* a, const double* b, const double* c,
                  const double* d);

// Sign of dx*(py - ay) - dy*(px - ax): orientation of p against the line
// through a with direction (dx, dy).  Exact; used by the symbolic
// super-triangle handling in the 2-d builder.
int cross_dir_sign(double dx, double dy, const double* a, const double* p);

}  // namespace dtfe
