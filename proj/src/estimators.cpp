#include "dtfe/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dtfe {

namespace {

bool same_point(const Point& a, const Point& b, int dim) {
  return a[0] == b[0] && (dim == 1 || a[1] == b[1]);
}

std::vector<Point> boundary_ghost_sites(const Window& w) {
  if (w.dim == 1) return {{w.lo[0], 0.0}, {w.hi[0], 0.0}};
  return {{w.lo[0], w.lo[1]},
          {w.hi[0], w.lo[1]},
          {w.hi[0], w.hi[1]},
          {w.lo[0], w.hi[1]}};
}

}  // namespace

IntensityEstimate dtfe_field(const PointPattern& pattern, const Window& w) {
  if (pattern.dim != w.dim)
    throw std::invalid_argument("dtfe_field: pattern/window dimension");
  for (std::size_t i = 0; i < pattern.size(); ++i)
    if (!w.contains(pattern.pts[i]))
      throw std::invalid_argument("dtfe_field: point outside window");

  IntensityEstimate est;
  est.dim = w.dim;
  est.window = w;
  est.real_points = pattern.real_count();

  if (est.real_points < static_cast<std::size_t>(w.dim) + 1) {
    est.tessellated = false;
    est.points = pattern.pts;
    est.ghost = pattern.ghost;
    est.constant_value =
        static_cast<double>(est.real_points) / w.volume();
    return est;
  }

  PointPattern work = pattern;
  for (const Point& site : boundary_ghost_sites(w)) {
    bool present = false;
    for (std::size_t i = 0; i < work.size() && !present; ++i)
      present = same_point(work.pts[i], site, w.dim);
    if (!present) {
      work.push(site, true);
      ++est.boundary_ghosts;
    }
  }

  est.tessellated = true;
  est.tess = build_delaunay(work);
  est.points = est.tess.points;
  est.ghost = est.tess.ghost;

  const std::size_t n = est.points.size();
  est.point_weight.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    if (!est.ghost[i]) est.point_weight[i] = 1.0 / est.tess.contiguous_volume[i];

  est.cell_value.assign(est.tess.cells.size(), 0.0);
  for (std::size_t j = 0; j < est.tess.cells.size(); ++j) {
    double v = 0.0;
    for (int k = 0; k <= w.dim; ++k) {
      const int p = est.tess.cells[j][k];
      if (!est.ghost[p]) v += est.point_weight[p];
    }
    est.cell_value[j] = v;
  }
  return est;
}

double dtfe_evaluate(const IntensityEstimate& est, const Point& x0) {
  if (!est.window.contains(x0)) return 0.0;
  if (!est.tessellated) return est.constant_value;
  const int cell = locate_cell(est.tess, x0);
  if (cell < 0) return 0.0;
  for (int k = 0; k <= est.dim; ++k) {
    const int p = est.tess.cells[cell][k];
    if (!est.ghost[p] && same_point(est.points[p], x0, est.dim))
      return (est.dim + 1) * est.point_weight[p];
  }
  return est.cell_value[cell];
}

double adaptive_kernel_g(const IntensityEstimate& est, std::size_t i,
                         const Point& x0) {
  if (i >= est.points.size() || est.ghost[i])
    throw std::invalid_argument("adaptive_kernel_g: not a real data point");
  if (!est.window.contains(x0)) return 0.0;
  if (!est.tessellated) return 1.0 / est.window.volume();
  const int cell = locate_cell(est.tess, x0);
  if (cell < 0) return 0.0;
  bool incident = false;
  for (int k = 0; k <= est.dim; ++k) {
    const int p = est.tess.cells[cell][k];
    if (!est.ghost[p] && same_point(est.points[p], x0, est.dim))
      return p == static_cast<int>(i) ? (est.dim + 1) * est.point_weight[i]
                                      : 0.0;
    incident = incident || p == static_cast<int>(i);
  }
  return incident ? est.point_weight[i] : 0.0;
}

double total_mass(const IntensityEstimate& est) {
  if (!est.tessellated)
    return est.constant_value * est.window.volume();
  double mass = 0.0;
  for (std::size_t j = 0; j < est.cell_value.size(); ++j)
    mass += est.cell_value[j] * est.tess.cell_volume[j];
  return mass;
}

namespace {

// Area of the disk of radius r at the origin intersected with the axis
// rectangle [0, x] x [0, y], for x, y >= 0.
double quarter_patch(double x, double y, double r) {
  x = std::min(x, r);
  y = std::min(y, r);
  if (x * x + y * y <= r * r) return x * y;
  auto g = [r](double t) {
    return 0.5 * (t * std::sqrt(std::max(0.0, r * r - t * t)) +
                  r * r * std::asin(std::min(1.0, t / r)));
  };
  const double xs = std::min(x, std::sqrt(std::max(0.0, r * r - y * y)));
  return xs * y + g(x) - g(xs);
}

// Signed area of disk(0, r) intersected with the rectangle spanned by the
// origin and (x, y), any signs.
double signed_patch(double x, double y, double r) {
  const double s = (x < 0 ? -1.0 : 1.0) * (y < 0 ? -1.0 : 1.0);
  return s * quarter_patch(std::abs(x), std::abs(y), r);
}

}  // namespace

double ball_window_volume(const Point& center, double r, const Window& w) {
  if (!(r > 0.0)) throw std::invalid_argument("ball radius must be > 0");
  if (w.dim == 1) {
    const double lo = std::max(w.lo[0], center[0] - r);
    const double hi = std::min(w.hi[0], center[0] + r);
    return std::max(0.0, hi - lo);
  }
  const double x1 = w.lo[0] - center[0], x2 = w.hi[0] - center[0];
  const double y1 = w.lo[1] - center[1], y2 = w.hi[1] - center[1];
  const double a = signed_patch(x2, y2, r) - signed_patch(x1, y2, r) -
                   signed_patch(x2, y1, r) + signed_patch(x1, y1, r);
  return std::max(0.0, a);
}

namespace {

bool in_ball(const Point& p, const Point& x0, double h, int dim) {
  const double dx = p[0] - x0[0];
  const double dy = dim == 2 ? p[1] - x0[1] : 0.0;
  return dx * dx + dy * dy < h * h;
}

}  // namespace

double berman_diggle(const PointPattern& pattern, const Window& w,
                     const Point& x0, double h) {
  const double vol = ball_window_volume(x0, h, w);
  if (!(vol > 0.0))
    throw std::invalid_argument("berman_diggle: ball misses the window");
  long count = 0;
  for (std::size_t i = 0; i < pattern.size(); ++i)
    if (!pattern.ghost[i] && in_ball(pattern.pts[i], x0, h, w.dim)) ++count;
  return static_cast<double>(count) / vol;
}

double kernel_k(const PointPattern& pattern, const Window& w, const Point& x0,
                double h) {
  double sum = 0.0;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    if (pattern.ghost[i] || !in_ball(pattern.pts[i], x0, h, w.dim)) continue;
    sum += 1.0 / ball_window_volume(pattern.pts[i], h, w);
  }
  return sum;
}

}  // namespace dtfe
