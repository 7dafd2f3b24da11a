#include "dtfe/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <unordered_map>

#include "dtfe/predicates.hpp"
#include "geometry_internal.hpp"

namespace dtfe {

Window Window::interval(double a, double b) {
  if (!(a < b)) throw std::invalid_argument("window: need a < b");
  Window w;
  w.dim = 1;
  w.lo = {a, 0};
  w.hi = {b, 0};
  return w;
}

Window Window::rect(double ax, double bx, double ay, double by) {
  if (!(ax < bx) || !(ay < by))
    throw std::invalid_argument("window: need lo < hi on both axes");
  Window w;
  w.dim = 2;
  w.lo = {ax, ay};
  w.hi = {bx, by};
  return w;
}

double Window::volume() const {
  double v = hi[0] - lo[0];
  if (dim == 2) v *= hi[1] - lo[1];
  return v;
}

double Window::diameter() const {
  const double dx = hi[0] - lo[0];
  if (dim == 1) return dx;
  const double dy = hi[1] - lo[1];
  return std::sqrt(dx * dx + dy * dy);
}

bool Window::contains(const Point& p) const {
  if (p[0] < lo[0] || p[0] > hi[0]) return false;
  if (dim == 2 && (p[1] < lo[1] || p[1] > hi[1])) return false;
  return true;
}

std::size_t PointPattern::real_count() const {
  std::size_t n = 0;
  for (auto g : ghost) n += g ? 0 : 1;
  return n;
}

void PointPattern::push(const Point& p, bool is_ghost) {
  pts.push_back(dim == 1 ? Point{p[0], 0.0} : p);
  ghost.push_back(is_ghost ? 1 : 0);
}

namespace {

double pattern_diameter(const std::vector<Point>& pts, int dim) {
  if (pts.empty()) return 0;
  double xlo = pts[0][0], xhi = pts[0][0], ylo = pts[0][1], yhi = pts[0][1];
  for (const auto& p : pts) {
    xlo = std::min(xlo, p[0]);
    xhi = std::max(xhi, p[0]);
    ylo = std::min(ylo, p[1]);
    yhi = std::max(yhi, p[1]);
  }
  const double dx = xhi - xlo, dy = dim == 2 ? yhi - ylo : 0;
  return std::sqrt(dx * dx + dy * dy);
}

double dist(const Point& a, const Point& b) {
  return std::hypot(a[0] - b[0], a[1] - b[1]);
}

// Raw in-circle determinant value (double), for tolerance scans only.
double incircle_value(const Point& a, const Point& b, const Point& c,
                      const Point& d) {
  const double adx = a[0] - d[0], ady = a[1] - d[1];
  const double bdx = b[0] - d[0], bdy = b[1] - d[1];
  const double cdx = c[0] - d[0], cdy = c[1] - d[1];
  return (adx * adx + ady * ady) * (bdx * cdy - cdx * bdy) +
         (bdx * bdx + bdy * bdy) * (cdx * ady - adx * cdy) +
         (cdx * cdx + cdy * cdy) * (adx * bdy - bdx * ady);
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

GeneralPositionReport validate_general_position(const PointPattern& pattern,
                                                double tol) {
  GeneralPositionReport rep;
  const auto& pts = pattern.pts;
  const int n = static_cast<int>(pts.size());
  const double diam = std::max(pattern_diameter(pts, pattern.dim), 1e-300);

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double d = pattern.dim == 1 ? std::abs(pts[i][0] - pts[j][0])
                                        : dist(pts[i], pts[j]);
      if (d <= tol * diam)
        rep.violations.push_back({GeneralPositionReport::Kind::Coincident,
                                  {i, j},
                                  d / diam});
    }
  if (pattern.dim == 1) return rep;

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        const double s = std::max(dist(pts[i], pts[j]),
                                  std::max(dist(pts[i], pts[k]),
                                           dist(pts[j], pts[k])));
        if (s <= 0) continue;
        const double cross =
            (pts[j][0] - pts[i][0]) * (pts[k][1] - pts[i][1]) -
            (pts[j][1] - pts[i][1]) * (pts[k][0] - pts[i][0]);
        const double mag = std::abs(cross) / (s * s);
        const bool exact_zero =
            orient2d_sign(pts[i].data(), pts[j].data(), pts[k].data()) == 0;
        if (exact_zero || mag <= tol)
          rep.violations.push_back({GeneralPositionReport::Kind::Collinear,
                                    {i, j, k},
                                    exact_zero ? 0.0 : mag});
      }

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
          double s = 0;
          const int idx[4] = {i, j, k, l};
          for (int u = 0; u < 4; ++u)
            for (int v = u + 1; v < 4; ++v)
              s = std::max(s, dist(pts[idx[u]], pts[idx[v]]));
          if (s <= 0) continue;
          const double det = incircle_value(pts[i], pts[j], pts[k], pts[l]);
          const double mag = std::abs(det) / (s * s * s * s);
          const bool exact_zero = incircle_sign(pts[i].data(), pts[j].data(),
                                                pts[k].data(),
                                                pts[l].data()) == 0;
          if (exact_zero || mag <= tol)
            rep.violations.push_back({GeneralPositionReport::Kind::Cocircular,
                                      {i, j, k, l},
                                      exact_zero ? 0.0 : mag});
        }
  return rep;
}

namespace {

// ---- construction finalization shared by the 1-d and 2-d paths ----

void canonicalize_cells(std::vector<std::array<int, 3>>& cells, int dim) {
  for (auto& c : cells) {
    if (dim == 1) {
      if (c[0] > c[1]) std::swap(c[0], c[1]);
      c[2] = -1;
    } else {
      // rotate so the smallest index leads; rotation keeps orientation
      int k = 0;
      if (c[1] < c[k]) k = 1;
      if (c[2] < c[k]) k = 2;
      std::array<int, 3> r = {c[k], c[(k + 1) % 3], c[(k + 2) % 3]};
      c = r;
    }
  }
  std::sort(cells.begin(), cells.end());
}

Circumball circumball_of(const Tessellation& t, const std::array<int, 3>& c) {
  Circumball b;
  if (t.dim == 1) {
    const double x0 = t.points[c[0]][0], x1 = t.points[c[1]][0];
    b.center = {(x0 + x1) / 2, 0};
    b.radius = std::abs(x1 - x0) / 2;
    return b;
  }
  const Point &a = t.points[c[0]], &p = t.points[c[1]], &q = t.points[c[2]];
  const double bx = p[0] - a[0], by = p[1] - a[1];
  const double cx = q[0] - a[0], cy = q[1] - a[1];
  const double d = 2 * (bx * cy - by * cx);
  const double b2 = bx * bx + by * by, c2 = cx * cx + cy * cy;
  const double ux = (cy * b2 - by * c2) / d;
  const double uy = (bx * c2 - cx * b2) / d;
  b.center = {a[0] + ux, a[1] + uy};
  b.radius = std::sqrt(ux * ux + uy * uy);
  return b;
}

void finalize(Tessellation& t) {
  const int n = static_cast<int>(t.points.size());
  const int m = static_cast<int>(t.cells.size());
  const int verts = t.dim + 1;

  t.cell_volume.resize(m);
  t.circumball.resize(m);
  for (int j = 0; j < m; ++j) {
    const auto& c = t.cells[j];
    if (t.dim == 1) {
      t.cell_volume[j] = std::abs(t.points[c[1]][0] - t.points[c[0]][0]);
    } else {
      const Point &a = t.points[c[0]], &b = t.points[c[1]],
                  &q = t.points[c[2]];
      t.cell_volume[j] = ((b[0] - a[0]) * (q[1] - a[1]) -
                          (b[1] - a[1]) * (q[0] - a[0])) /
                         2;
    }
    t.circumball[j] = circumball_of(t, t.cells[j]);
  }

  t.incident_cells.assign(n, {});
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < verts; ++k) t.incident_cells[t.cells[j][k]].push_back(j);

  t.point_neighbors.assign(n, {});
  for (int j = 0; j < m; ++j)
    for (int a = 0; a < verts; ++a)
      for (int b = 0; b < verts; ++b)
        if (a != b) t.point_neighbors[t.cells[j][a]].push_back(t.cells[j][b]);
  for (auto& nb : t.point_neighbors) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }

  t.contiguous_volume.assign(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j : t.incident_cells[i]) t.contiguous_volume[i] += t.cell_volume[j];

  // facet adjacency
  t.cell_adj.assign(m, {-1, -1, -1});
  if (t.dim == 1) {
    // cells sharing a vertex are adjacent across it
    for (int i = 0; i < n; ++i) {
      const auto& inc = t.incident_cells[i];
      if (inc.size() == 2) {
        const int a = inc[0], b = inc[1];
        // slot opposite the shared vertex
        t.cell_adj[a][t.cells[a][0] == i ? 1 : 0] = b;
        t.cell_adj[b][t.cells[b][0] == i ? 1 : 0] = a;
      }
    }
  } else {
    std::map<std::pair<int, int>, std::pair<int, int>> half;  // edge -> (cell, slot)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < 3; ++k) {
        int u = t.cells[j][(k + 1) % 3], v = t.cells[j][(k + 2) % 3];
        if (u > v) std::swap(u, v);
        auto key = std::make_pair(u, v);
        auto it = half.find(key);
        if (it == half.end()) {
          half[key] = {j, k};
        } else {
          t.cell_adj[j][k] = it->second.first;
          t.cell_adj[it->second.first][it->second.second] = j;
        }
      }
  }

  // 1-d interval index
  if (t.dim == 1) {
    t.sorted_order.resize(n);
    std::iota(t.sorted_order.begin(), t.sorted_order.end(), 0);
    std::sort(t.sorted_order.begin(), t.sorted_order.end(),
              [&](int a, int b) { return t.points[a][0] < t.points[b][0]; });
    std::map<std::pair<int, int>, int> cell_of;
    for (int j = 0; j < m; ++j)
      cell_of[{t.cells[j][0], t.cells[j][1]}] = j;
    t.interval_cell.resize(n > 0 ? n - 1 : 0);
    for (int k = 0; k + 1 < n; ++k) {
      int u = t.sorted_order[k], v = t.sorted_order[k + 1];
      if (u > v) std::swap(u, v);
      t.interval_cell[k] = cell_of.at({u, v});
    }
  }
}

}  // namespace

double Tessellation::hull_volume() const {
  if (points.empty()) return 0;
  if (dim == 1) {
    double lo = points[0][0], hi = points[0][0];
    for (const auto& p : points) {
      lo = std::min(lo, p[0]);
      hi = std::max(hi, p[0]);
    }
    return hi - lo;
  }
  // monotone chain hull + shoelace, independent of the cell list
  std::vector<Point> p = points;
  std::sort(p.begin(), p.end());
  auto cross = [](const Point& o, const Point& a, const Point& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  std::vector<Point> h(2 * p.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  for (std::size_t i = p.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  h.resize(k > 0 ? k - 1 : 0);
  double area = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const auto& a = h[i];
    const auto& b = h[(i + 1) % h.size()];
    area += a[0] * b[1] - b[0] * a[1];
  }
  return std::abs(area) / 2;
}

Tessellation build_delaunay(const PointPattern& pattern) {
  const int dim = pattern.dim;
  const int n = static_cast<int>(pattern.pts.size());
  if (n < dim + 1) throw TooFewPoints("build_delaunay: need dim+1 points");

  const double diam = std::max(pattern_diameter(pattern.pts, dim), 1.0e-300);
  const double jitter_mag = 1e-12 * diam;

  std::unordered_map<int, Point> offsets;
  auto effective = [&](std::vector<Point>& out) {
    out = pattern.pts;
    for (const auto& [i, off] : offsets) {
      out[i][0] += off[0];
      out[i][1] += off[1];
    }
  };
  auto jitter_point = [&](int idx, int attempt) {
    const std::uint64_t h =
        mix64(static_cast<std::uint64_t>(idx) * 0x100000001b3ULL +
              static_cast<std::uint64_t>(attempt));
    if (dim == 1) {
      offsets[idx] = {(h & 1) ? jitter_mag : -jitter_mag, 0};
    } else {
      const double ang =
          2 * 3.14159265358979323846 * (static_cast<double>(h >> 11) * 0x1.0p-53);
      offsets[idx] = {jitter_mag * std::cos(ang), jitter_mag * std::sin(ang)};
    }
  };

  constexpr int kMaxAttempts = 8;
  std::vector<Point> pts;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    effective(pts);

    // coincident coordinates break both builders; perturb the later index
    {
      std::vector<int> order(n);
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(), [&](int a, int b) {
        return pts[a] < pts[b];
      });
      int dup = -1;
      for (int k = 0; k + 1 < n; ++k)
        if (pts[order[k]] == pts[order[k + 1]]) {
          dup = std::max(order[k], order[k + 1]);
          break;
        }
      if (dup >= 0) {
        jitter_point(dup, attempt);
        continue;
      }
    }

    Tessellation t;
    t.dim = dim;
    t.points = pts;
    t.ghost = pattern.ghost;

    if (dim == 1) {
      std::vector<int> order(n);
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(),
                [&](int a, int b) { return pts[a][0] < pts[b][0]; });
      t.cells.reserve(n - 1);
      for (int k = 0; k + 1 < n; ++k)
        t.cells.push_back({order[k], order[k + 1], -1});
    } else {
      std::vector<std::array<int, 3>> tris;
      int bad = -1;
      if (!detail::try_build_delaunay_2d(pts, tris, bad)) {
        jitter_point(bad, attempt);
        continue;
      }
      if (tris.empty()) {
        // every point affinely degenerate (all collinear): no finite cell
        // exists, so nudge one point off the common line and retry
        jitter_point(0, attempt);
        continue;
      }
      t.cells = std::move(tris);
    }

    canonicalize_cells(t.cells, dim);
    for (const auto& [i, off] : offsets) t.jitter.push_back({i, off});
    std::sort(t.jitter.begin(), t.jitter.end(),
              [](const auto& a, const auto& b) { return a.point < b.point; });
    finalize(t);
    return t;
  }
  throw DegenerateInput("build_delaunay: degeneracy survived perturbation");
}

int locate_cell(const Tessellation& t, const Point& x0) {
  const int n = static_cast<int>(t.points.size());
  if (t.dim == 1) {
    const double x = x0[0];
    const auto& ord = t.sorted_order;
    const double xmin = t.points[ord.front()][0];
    const double xmax = t.points[ord.back()][0];
    if (x < xmin || x > xmax) return -1;
    // first interval whose right endpoint is >= x
    int lo = 0, hi = n - 1;
    while (hi - lo > 1) {
      const int mid = (lo + hi) / 2;
      if (t.points[ord[mid]][0] <= x)
        lo = mid;
      else
        hi = mid;
    }
    // x in [ord[lo], ord[lo+1]]; on an interior vertex two cells apply
    int best = -1;
    auto consider = [&](int k) {
      if (k < 0 || k + 1 >= n) return;
      const double a = t.points[ord[k]][0], b = t.points[ord[k + 1]][0];
      if (x < a || x > b) return;
      const int c = t.interval_cell[k];
      if (best < 0 || c < best) best = c;
    };
    consider(lo);
    if (x == t.points[ord[lo]][0]) consider(lo - 1);
    return best;
  }

  const int found = detail::locate_walk_2d(t, x0);
  if (found < 0) return found;

  // resolve facet/vertex ties toward the smallest incident cell id
  auto contains = [&](int cell) {
    const auto& c = t.cells[cell];
    for (int k = 0; k < 3; ++k) {
      const int u = c[(k + 1) % 3], v = c[(k + 2) % 3];
      if (orient2d_sign(t.points[u].data(), t.points[v].data(), x0.data()) < 0)
        return false;
    }
    return true;
  };
  for (int k = 0; k < 3; ++k) {
    const auto& p = t.points[t.cells[found][k]];
    if (p[0] == x0[0] && p[1] == x0[1]) {
      int best = found;
      for (int c : t.incident_cells[t.cells[found][k]])
        if (c < best && contains(c)) best = c;
      return best;
    }
  }
  int best = found;
  for (int k = 0; k < 3; ++k) {
    const int u = t.cells[found][(k + 1) % 3], v = t.cells[found][(k + 2) % 3];
    if (orient2d_sign(t.points[u].data(), t.points[v].data(), x0.data()) == 0) {
      const int nb = t.cell_adj[found][k];
      if (nb >= 0 && nb < best && contains(nb)) best = nb;
    }
  }
  return best;
}

double contiguous_cell_volume(const Tessellation& t, int i) {
  return t.contiguous_volume.at(i);
}

double shared_contiguous_volume(const Tessellation& t, int i, int j) {
  const auto& a = t.incident_cells.at(i);
  const auto& b = t.incident_cells.at(j);
  double vol = 0;
  std::size_t u = 0, v = 0;
  while (u < a.size() && v < b.size()) {
    if (a[u] < b[v])
      ++u;
    else if (b[v] < a[u])
      ++v;
    else {
      vol += t.cell_volume[a[u]];
      ++u;
      ++v;
    }
  }
  return vol;
}

}  // namespace dtfe
