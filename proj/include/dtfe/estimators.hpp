#pragma once

#include <cstdint>
#include <vector>

#include "dtfe/geometry.hpp"

namespace dtfe {

// Piecewise-constant intensity field over a Delaunay tessellation.  Each
// data point y carries weight 1/|W(y)|, where W(y) is the union of the
// cells incident to y; the field on a cell is the sum of the weights of
// its real vertices.  Boundary ghosts close the tessellation over the
// window but never contribute weight.  With fewer than dim+1 real points
// the field degenerates to the constant n/|window|.
struct IntensityEstimate {
  int dim = 1;
  Window window;
  bool tessellated = false;
  Tessellation tess;                // populated when tessellated
  std::vector<Point> points;        // effective coordinates, ghosts included
  std::vector<std::uint8_t> ghost;
  std::vector<double> point_weight;  // 1/|W(y)| for real points, 0 for ghosts
  std::vector<double> cell_value;    // field value on each cell
  std::size_t real_points = 0;
  double constant_value = 0.0;  // field value when not tessellated
  int boundary_ghosts = 0;      // ghosts added at the window boundary
};

// Builds the field for a pattern observed on the window.  Ghost points are
// added at the window endpoints (1-d) or corners (2-d) unless a point
// already sits there.  Throws InvalidWindow-like std::invalid_argument if
// a point lies outside the window.
IntensityEstimate dtfe_field(const PointPattern& pattern, const Window& w);

// Field value at x0: 0 outside the window or hull, the cell value inside,
// and (dim+1)/|W(y)| exactly at a data point y.
double dtfe_evaluate(const IntensityEstimate& est, const Point& x0);

// Contribution of data point i to the field at x0.  This is a kernel of
// unit mass: 1/|W(y_i)| on W(y_i) and 0 elsewhere, so summing over i
// reproduces dtfe_evaluate and integrating over x0 gives exactly 1.
double adaptive_kernel_g(const IntensityEstimate& est, std::size_t i,
                         const Point& x0);

// Integral of the field over the window; equals the number of real points
// up to roundoff by construction.
double total_mass(const IntensityEstimate& est);

// Volume of the ball b(center, r) clipped to the window.
double ball_window_volume(const Point& center, double r, const Window& w);

// Count of points in b(x0, h) divided by the clipped ball volume.
double berman_diggle(const PointPattern& pattern, const Window& w,
                     const Point& x0, double h);

// Mass-preserving variant: each point in b(x0, h) contributes the
// reciprocal of its own clipped ball volume.
double kernel_k(const PointPattern& pattern, const Window& w, const Point& x0,
                double h);

}  // namespace dtfe
