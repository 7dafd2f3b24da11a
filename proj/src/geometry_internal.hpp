#pragma once

#include <array>
#include <vector>

#include "dtfe/geometry.hpp"

namespace dtfe::detail {

// Incremental 2-d Delaunay over the given coordinates.  On success fills
// `tris` with counterclockwise index triples.  Returns false when an
// exactly degenerate configuration would corrupt the construction, with
// `bad_point` set to the input index that should be perturbed.
bool try_build_delaunay_2d(const std::vector<Point>& pts,
                           std::vector<std::array<int, 3>>& tris,
                           int& bad_point);

// Exact visibility walk; -1 when p is outside the hull.  Ties on facets
// are resolved by the caller.
int locate_walk_2d(const Tessellation& tess, const Point& p);

}  // namespace dtfe::detail
