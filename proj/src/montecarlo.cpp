#include "dtfe/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>

namespace dtfe {

MomentReport summarize(const std::vector<double>& values) {
  MomentReport r;
  r.replicates = static_cast<long>(values.size());
  if (values.empty()) return r;
  double sum = 0.0;
  r.min = r.max = values.front();
  for (const double v : values) {
    sum += v;
    r.min = std::min(r.min, v);
    r.max = std::max(r.max, v);
  }
  const double n = static_cast<double>(values.size());
  r.mean = sum / n;
  if (values.size() < 2) return r;
  double m2 = 0.0, m4 = 0.0;
  for (const double v : values) {
    const double d = v - r.mean;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  r.variance = m2 / (n - 1.0);
  r.se_mean = std::sqrt(r.variance / n);
  m4 /= n;
  const double var_s2 =
      m4 / n - r.variance * r.variance * (n - 3.0) / (n * (n - 1.0));
  r.se_variance = std::sqrt(std::max(0.0, var_s2));
  return r;
}

std::vector<double> run_replicates_serial(const ExperimentSpec& spec,
                                          const ReplicateFn& fn) {
  if (spec.replicates < 0)
    throw std::invalid_argument("replicates must be >= 0");
  std::vector<double> values(spec.replicates);
  for (long r = 0; r < spec.replicates; ++r) {
    Rng rng(spec.seed, static_cast<std::uint64_t>(r));
    values[r] = fn(r, rng);
  }
  return values;
}

std::vector<double> run_replicates(const ExperimentSpec& spec,
                                   const ReplicateFn& fn) {
  if (spec.replicates < 0)
    throw std::invalid_argument("replicates must be >= 0");
  if (!spec.parallel) return run_replicates_serial(spec, fn);
  std::vector<double> values(spec.replicates);
  std::exception_ptr failure = nullptr;
#pragma omp parallel for schedule(dynamic, 4)
  for (long r = 0; r < spec.replicates; ++r) {
    try {
      Rng rng(spec.seed, static_cast<std::uint64_t>(r));
      values[r] = fn(r, rng);
    } catch (...) {
#pragma omp critical(dtfe_replicate_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return values;
}

namespace {

bool ball_inside(const Circumball& b, const Window& w) {
  if (b.center[0] - b.radius < w.lo[0] || b.center[0] + b.radius > w.hi[0])
    return false;
  if (w.dim == 2 && (b.center[1] - b.radius < w.lo[1] ||
                     b.center[1] + b.radius > w.hi[1]))
    return false;
  return true;
}

// true if any cell incident to point i has a circumball leaving the
// window or a missing neighbour across a facet (hull contact)
bool point_guard_tripped(const Tessellation& t, const Window& w, int i) {
  for (const int c : t.incident_cells[i]) {
    if (!ball_inside(t.circumball[c], w)) return true;
    for (int k = 0; k <= t.dim; ++k)
      if (t.cell_adj[c][k] < 0 && t.cells[c][k] != i) return true;
  }
  return false;
}

struct PalmValues {
  double self = 0.0, neighbour = 0.0;
  bool guard = false;
};

PalmValues palm_replicate(const PalmSpec& spec, const Window& w, Rng& rng) {
  PalmValues out;
  PointPattern pat;
  pat.dim = spec.dim;
  pat.push({0.0, 0.0});  // the typical point, always index 0
  const PointPattern ambient =
      sample_homogeneous_poisson(spec.rate, w, rng);
  for (const auto& p : ambient.pts) pat.push(p);

  if (pat.real_count() < static_cast<std::size_t>(spec.dim) + 1) {
    out.self = spec.rate / w.volume();
    out.guard = true;
    return out;
  }
  const Tessellation tess = build_delaunay(pat);
  const double w0 = contiguous_cell_volume(tess, 0);
  out.self = spec.rate / w0;
  out.guard = point_guard_tripped(tess, w, 0);
  double acc = 0.0;
  for (const int y : tess.point_neighbors[0]) {
    acc += shared_contiguous_volume(tess, 0, y) /
           tess.contiguous_volume[y];
    out.guard = out.guard || point_guard_tripped(tess, w, y);
  }
  out.neighbour = spec.rate * acc / w0;
  return out;
}

}  // namespace

PalmReport palm_weight_moments(const PalmSpec& spec) {
  if (spec.dim != 1 && spec.dim != 2)
    throw std::invalid_argument("palm moments: dim must be 1 or 2");
  if (!(spec.rate > 0.0) || !(spec.halfwidth > 0.0))
    throw std::invalid_argument("palm moments: rate and halfwidth > 0");
  const Window w =
      spec.dim == 1
          ? Window::interval(-spec.halfwidth, spec.halfwidth)
          : Window::rect(-spec.halfwidth, spec.halfwidth, -spec.halfwidth,
                         spec.halfwidth);

  PalmReport report;
  report.self_values.resize(spec.replicates);
  report.neighbour_values.resize(spec.replicates);
  report.excess_values.resize(spec.replicates);
  std::vector<std::uint8_t> guard(spec.replicates, 0);

  ExperimentSpec run{spec.seed, spec.replicates, spec.parallel};
  // run_replicates carries one double per replicate; store the rest
  // through side arrays indexed by replicate, which keeps the ordered
  // reduction property
  run_replicates(run, [&](long r, Rng& rng) {
    const PalmValues v = palm_replicate(spec, w, rng);
    report.self_values[r] = v.self;
    report.neighbour_values[r] = v.neighbour;
    report.excess_values[r] =
        (v.self + v.neighbour) / (spec.rate * spec.rate) - 1.0;
    guard[r] = v.guard ? 1 : 0;
    return 0.0;
  });

  report.self_term = summarize(report.self_values);
  report.neighbour_term = summarize(report.neighbour_values);
  report.excess = summarize(report.excess_values);
  for (const auto g : guard) report.guard_flags += g;
  return report;
}

}  // namespace dtfe
