#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace dtfe {

// Planar point; for dim == 1 the second coordinate is 0 and ignored.
using Point = std::array<double, 2>;

struct TooFewPoints : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct DegenerateInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Axis-aligned box observation window, dim 1 or 2.
struct Window {
  int dim = 1;
  Point lo{0, 0};
  Point hi{0, 0};

  static Window interval(double a, double b);
  static Window rect(double ax, double bx, double ay, double by);

  double volume() const;
  double diameter() const;
  bool contains(const Point& p) const;
};

// Finite point set; ghost marks edge-correction points that take part in
// the tessellation but never count as data.
struct PointPattern {
  int dim = 1;
  std::vector<Point> pts;
  std::vector<std::uint8_t> ghost;  // same length as pts

  std::size_t size() const { return pts.size(); }
  std::size_t real_count() const;
  void push(const Point& p, bool is_ghost = false);
};

struct GeneralPositionReport {
  enum class Kind { Coincident, Collinear, Cocircular };
  struct Violation {
    Kind kind;
    std::vector<int> indices;
    double magnitude;  // normalized residual that fell below the tolerance
  };
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// Reports every (d+2)-subset that is cospherical within tol and every
// affinely degenerate (k+1)-subset, k <= d.  Exhaustive scan; intended
// for diagnostics and small patterns.
GeneralPositionReport validate_general_position(const PointPattern& pattern,
                                                double tol);

struct Circumball {
  Point center{0, 0};
  double radius = 0;
};

// Delaunay tessellation.  Cells are (dim+1)-tuples of point indices into
// `points`; for dim == 1 the third slot is -1.  `points` holds the
// coordinates actually tessellated: input coordinates plus any recorded
// tie-break jitter.
struct Tessellation {
  int dim = 1;
  std::vector<Point> points;
  std::vector<std::uint8_t> ghost;
  std::vector<std::array<int, 3>> cells;
  std::vector<double> cell_volume;
  std::vector<Circumball> circumball;
  // Neighbor cell across the facet opposite each vertex slot, -1 on hull.
  std::vector<std::array<int, 3>> cell_adj;
  std::vector<std::vector<int>> incident_cells;   // per point, sorted
  std::vector<std::vector<int>> point_neighbors;  // per point, sorted
  std::vector<double> contiguous_volume;          // per point

  struct Jitter {
    int point;
    Point offset;
  };
  std::vector<Jitter> jitter;

  // dim == 1 location index: point indices by ascending coordinate and
  // the cell id of each consecutive interval.
  std::vector<int> sorted_order;
  std::vector<int> interval_cell;

  double hull_volume() const;
};

// Builds the Delaunay tessellation of the pattern.  Requires at least
// dim+1 points.  Exactly degenerate configurations that would corrupt
// the construction (coincident points, collinear cavity fills) receive a
// deterministic jitter of magnitude 1e-12 * diameter, recorded in the
// result; throws DegenerateInput if degeneracy survives retries.
Tessellation build_delaunay(const PointPattern& pattern);

// Cell containing x0, or -1 outside the hull.  A point on a shared facet
// is assigned to the incident cell with the smallest id.
int locate_cell(const Tessellation& tess, const Point& x0);

// Volume of the union of cells incident to point i (the contiguous
// Voronoi cell of i).
double contiguous_cell_volume(const Tessellation& tess, int i);

// Volume of the intersection of the contiguous cells of i and j: the sum
// of volumes of cells containing both, 0 for non-neighbors.
double shared_contiguous_volume(const Tessellation& tess, int i, int j);

}  // namespace dtfe
