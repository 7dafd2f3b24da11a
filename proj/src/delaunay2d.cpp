#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "dtfe/predicates.hpp"
#include "geometry_internal.hpp"

// Incremental insertion with cavity re-triangulation.  The enclosing
// super-triangle is symbolic: its three vertices sit at infinity in fixed
// directions, at increasing orders of magnitude, and every predicate that
// touches them is evaluated as the exact limit.  A finite super-triangle
// can steal hull triangles whose circumcircles are very large; the
// symbolic one cannot, so stripping ghost triangles at the end leaves the
// exact Delaunay triangulation of the input.
//
// Ghost vertex ids are -1, -2, -3.  Magnitudes are ordered |-3| >> |-2|
// >> |-1| >> any finite coordinate, which fixes every limit uniquely.

namespace dtfe::detail {
namespace {

constexpr double kDir[3][2] = {{0.0, 1.0}, {-0.8, -0.6}, {0.8, -0.6}};

inline bool is_ghost(int v) { return v < 0; }
inline int ghost_rank(int v) { return -v; }  // 1..3, larger = farther out
inline const double* dir(int v) { return kDir[-v - 1]; }

struct Tri {
  int v[3];
  int nbr[3];  // triangle across the edge opposite v[k], -1 = none
  bool alive = true;
  int mark = 0;
};

int sign_of(double x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

// cross(di, dj) for ghost directions; entries are exact in doubles.
int ghost_pair_sign(int gi, int gj) {
  const double* a = dir(gi);
  const double* b = dir(gj);
  return sign_of(a[0] * b[1] - a[1] * b[0]);
}

class Builder {
 public:
  explicit Builder(const std::vector<Point>& pts) : pts_(pts) {}

  bool run(std::vector<std::array<int, 3>>& out, int& bad_point);

 private:
  const std::vector<Point>& pts_;
  std::vector<Tri> tris_;
  std::vector<int> free_;
  int epoch_ = 0;
  int bad_ = -1;

  const double* coord(int v) const { return pts_[v].data(); }

  // Extended orientation: any argument may be a ghost.
  int orient(int a, int b, int c) const {
    const bool ga = is_ghost(a), gb = is_ghost(b), gc = is_ghost(c);
    const int ng = int(ga) + int(gb) + int(gc);
    if (ng == 0)
      return orient2d_sign(coord(a), coord(b), coord(c));
    if (ng == 1) {
      // rotate the ghost into the last slot (cyclic, orientation kept)
      int f1 = a, f2 = b, g = c;
      if (ga) {
        f1 = b;
        f2 = c;
        g = a;
      } else if (gb) {
        f1 = c;
        f2 = a;
        g = b;
      }
      // orient(f1, f2, M u) = M * cross(f2 - f1, u) + cross(f1, f2)
      const double* u = dir(g);
      const int lead = -cross_dir_sign(u[0], u[1], coord(f1), coord(f2));
      if (lead != 0) return lead;
      static constexpr double kOrigin[2] = {0.0, 0.0};
      return orient2d_sign(kOrigin, coord(f1), coord(f2));
    }
    if (ng == 2) {
      // rotate the finite vertex to the front: (f, gi, gj)
      int f = a, gi = b, gj = c;
      if (!gb) {
        f = b;
        gi = c;
        gj = a;
      } else if (!gc) {
        f = c;
        gi = a;
        gj = b;
      }
      (void)f;
      return ghost_pair_sign(gi, gj);
    }
    return ghost_pair_sign(b, c);  // leading term of the all-ghost case
  }

  // On the line through a and b (exactly), is p strictly between them?
  bool strictly_between(const double* a, const double* b,
                        const double* p) const {
    if (std::abs(b[0] - a[0]) >= std::abs(b[1] - a[1])) {
      const double lo = std::min(a[0], b[0]), hi = std::max(a[0], b[0]);
      return lo < p[0] && p[0] < hi;
    }
    const double lo = std::min(a[1], b[1]), hi = std::max(a[1], b[1]);
    return lo < p[1] && p[1] < hi;
  }

  // Is finite point p strictly inside the circumball of t?  Ghost cases
  // are the exact limits of circles through far-away vertices.
  bool in_ball(const Tri& t, int p) const {
    int gcount = 0;
    for (int k = 0; k < 3; ++k) gcount += is_ghost(t.v[k]);
    if (gcount == 0) {
      return incircle_sign(coord(t.v[0]), coord(t.v[1]), coord(t.v[2]),
                           coord(p)) > 0;
    }
    if (gcount == 1) {
      int k = 0;
      while (!is_ghost(t.v[k])) ++k;
      const int a = t.v[(k + 1) % 3], b = t.v[(k + 2) % 3];
      // open halfplane left of (a, b) plus the open segment
      const int s = orient2d_sign(coord(a), coord(b), coord(p));
      if (s != 0) return s > 0;
      return strictly_between(coord(a), coord(b), coord(p));
    }
    if (gcount == 2) {
      int k = 0;
      while (is_ghost(t.v[k])) ++k;
      const int f = t.v[k];
      int gi = t.v[(k + 1) % 3], gj = t.v[(k + 2) % 3];
      // the smaller-rank ghost fixes the boundary line, the larger the side
      const int gs = ghost_rank(gi) < ghost_rank(gj) ? gi : gj;
      const int gb = gs == gi ? gj : gi;
      const double* us = dir(gs);
      const int side = cross_dir_sign(us[0], us[1], coord(f), coord(p));
      const int want = ghost_pair_sign(gs, gb);
      if (side != 0) return side == want;
      // on the line: inside only on the open ray toward the ghost
      const double* fp = coord(f);
      const double* pp = coord(p);
      if (std::abs(us[0]) >= std::abs(us[1]))
        return (pp[0] - fp[0]) * us[0] > 0;
      return (pp[1] - fp[1]) * us[1] > 0;
    }
    return true;  // the initial all-ghost triangle covers the plane
  }

  int locate(int p, int hint) const {
    int cur = hint;
    const long cap = 4 * static_cast<long>(tris_.size()) + 64;
    for (long step = 0; step < cap; ++step) {
      bool moved = false;
      for (int k = 0; k < 3; ++k) {
        const int u = tris_[cur].v[(k + 1) % 3];
        const int v = tris_[cur].v[(k + 2) % 3];
        if (orient(u, v, p) < 0) {
          const int nb = tris_[cur].nbr[k];
          if (nb < 0) return -1;  // cannot happen for finite p
          cur = nb;
          moved = true;
          break;
        }
      }
      if (!moved) return cur;
    }
    return -1;
  }

  int alloc() {
    if (!free_.empty()) {
      const int id = free_.back();
      free_.pop_back();
      tris_[id].alive = true;
      tris_[id].mark = 0;
      return id;
    }
    tris_.push_back({});
    return static_cast<int>(tris_.size()) - 1;
  }

  bool insert(int p, int& hint);
};

bool Builder::insert(int p, int& hint) {
  int seed = locate(p, hint);
  if (seed < 0) {
    bad_ = p;
    return false;
  }
  if (!in_ball(tris_[seed], p)) {
    // p sits on a region boundary; some incident region's ball has it
    int found = -1;
    for (int k = 0; k < 3 && found < 0; ++k) {
      const int nb = tris_[seed].nbr[k];
      if (nb >= 0 && in_ball(tris_[nb], p)) found = nb;
    }
    if (found < 0) {
      for (int k = 0; k < 3 && found < 0; ++k) {
        const int nb = tris_[seed].nbr[k];
        if (nb < 0) continue;
        for (int j = 0; j < 3 && found < 0; ++j) {
          const int nb2 = tris_[nb].nbr[j];
          if (nb2 >= 0 && nb2 != seed && in_ball(tris_[nb2], p)) found = nb2;
        }
      }
    }
    if (found < 0) {
      bad_ = p;
      return false;
    }
    seed = found;
  }

  // cavity = connected in-ball triangles around the seed
  ++epoch_;
  std::vector<int> cavity, stack{seed};
  tris_[seed].mark = epoch_;
  while (!stack.empty()) {
    const int t = stack.back();
    stack.pop_back();
    cavity.push_back(t);
    for (int k = 0; k < 3; ++k) {
      const int nb = tris_[t].nbr[k];
      if (nb < 0 || tris_[nb].mark == epoch_) continue;
      if (in_ball(tris_[nb], p)) {
        tris_[nb].mark = epoch_;
        stack.push_back(nb);
      }
    }
  }

  struct Edge {
    int u, v, outside;
  };
  std::vector<Edge> ring;
  for (int t : cavity)
    for (int k = 0; k < 3; ++k) {
      const int nb = tris_[t].nbr[k];
      if (nb >= 0 && tris_[nb].mark == epoch_) continue;
      ring.push_back({tris_[t].v[(k + 1) % 3], tris_[t].v[(k + 2) % 3], nb});
    }

  for (int t : cavity) {
    tris_[t].alive = false;
    free_.push_back(t);
  }

  std::unordered_map<int, int> by_u;
  by_u.reserve(ring.size() * 2);
  std::vector<int> created;
  created.reserve(ring.size());
  for (const Edge& e : ring) {
    const int id = alloc();
    tris_[id].v[0] = e.u;
    tris_[id].v[1] = e.v;
    tris_[id].v[2] = p;
    tris_[id].nbr[0] = -1;
    tris_[id].nbr[1] = -1;
    tris_[id].nbr[2] = e.outside;
    if (orient(e.u, e.v, p) <= 0) {
      bad_ = p;  // exactly degenerate fill (collinear with the ring edge)
      return false;
    }
    if (e.outside >= 0) {
      Tri& o = tris_[e.outside];
      for (int s = 0; s < 3; ++s) {
        const int ou = o.v[(s + 1) % 3], ov = o.v[(s + 2) % 3];
        if (ou == e.v && ov == e.u) {
          o.nbr[s] = id;
          break;
        }
      }
    }
    by_u[e.u] = id;
    created.push_back(id);
  }
  for (const int id : created) {
    Tri& t = tris_[id];
    const auto next = by_u.find(t.v[1]);
    if (next == by_u.end()) {
      bad_ = p;  // ring is not a single cycle: degenerate input
      return false;
    }
    t.nbr[0] = next->second;              // across edge (v, p)
    tris_[next->second].nbr[1] = id;      // its edge (p, u)
  }
  hint = created.front();
  return true;
}

bool Builder::run(std::vector<std::array<int, 3>>& out, int& bad_point) {
  tris_.clear();
  free_.clear();
  Tri root;
  root.v[0] = -1;
  root.v[1] = -2;
  root.v[2] = -3;
  root.nbr[0] = root.nbr[1] = root.nbr[2] = -1;
  tris_.push_back(root);

  // spatial insertion order: Morton code over the bounding box
  const int n = static_cast<int>(pts_.size());
  double xlo = pts_[0][0], xhi = xlo, ylo = pts_[0][1], yhi = ylo;
  for (const auto& q : pts_) {
    xlo = std::min(xlo, q[0]);
    xhi = std::max(xhi, q[0]);
    ylo = std::min(ylo, q[1]);
    yhi = std::max(yhi, q[1]);
  }
  const double sx = xhi > xlo ? 65535.0 / (xhi - xlo) : 0.0;
  const double sy = yhi > ylo ? 65535.0 / (yhi - ylo) : 0.0;
  std::vector<std::uint64_t> keys(n);
  for (int i = 0; i < n; ++i) {
    auto spread = [](std::uint32_t x) {
      std::uint64_t v = x;
      v = (v | (v << 16)) & 0x0000FFFF0000FFFFULL;
      v = (v | (v << 8)) & 0x00FF00FF00FF00FFULL;
      v = (v | (v << 4)) & 0x0F0F0F0F0F0F0F0FULL;
      v = (v | (v << 2)) & 0x3333333333333333ULL;
      v = (v | (v << 1)) & 0x5555555555555555ULL;
      return v;
    };
    const auto cx = static_cast<std::uint32_t>((pts_[i][0] - xlo) * sx);
    const auto cy = static_cast<std::uint32_t>((pts_[i][1] - ylo) * sy);
    keys[i] = ((spread(cx) | (spread(cy) << 1)) << 20) |
              static_cast<std::uint64_t>(i);
  }
  std::sort(keys.begin(), keys.end());

  int hint = 0;
  for (const auto key : keys) {
    const int i = static_cast<int>(key & 0xFFFFF);
    if (!insert(i, hint)) {
      bad_point = bad_;
      return false;
    }
  }

  out.clear();
  for (const Tri& t : tris_) {
    if (!t.alive) continue;
    if (is_ghost(t.v[0]) || is_ghost(t.v[1]) || is_ghost(t.v[2])) continue;
    out.push_back({t.v[0], t.v[1], t.v[2]});
  }
  return true;
}

}  // namespace

bool try_build_delaunay_2d(const std::vector<Point>& pts,
                           std::vector<std::array<int, 3>>& tris,
                           int& bad_point) {
  if (pts.size() > (1u << 20))
    throw std::invalid_argument("delaunay2d: too many points");
  Builder b(pts);
  return b.run(tris, bad_point);
}

int locate_walk_2d(const Tessellation& t, const Point& p) {
  const int m = static_cast<int>(t.cells.size());
  if (m == 0) return -1;
  int cur = 0;
  const long cap = 4L * m + 64;
  for (long step = 0; step < cap; ++step) {
    bool moved = false;
    for (int k = 0; k < 3; ++k) {
      const int u = t.cells[cur][(k + 1) % 3];
      const int v = t.cells[cur][(k + 2) % 3];
      if (orient2d_sign(t.points[u].data(), t.points[v].data(), p.data()) <
          0) {
        const int nb = t.cell_adj[cur][k];
        if (nb < 0) return -1;  // beyond a hull edge: outside the hull
        cur = nb;
        moved = true;
        break;
      }
    }
    if (!moved) return cur;
  }
  // exhaustive fallback; the walk should always terminate on Delaunay input
  for (int c = 0; c < m; ++c) {
    bool inside = true;
    for (int k = 0; k < 3 && inside; ++k) {
      const int u = t.cells[c][(k + 1) % 3];
      const int v = t.cells[c][(k + 2) % 3];
      inside = orient2d_sign(t.points[u].data(), t.points[v].data(),
                             p.data()) >= 0;
    }
    if (inside) return c;
  }
  return -1;
}

}  // namespace dtfe::detail
