#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "dtfe/geometry.hpp"
#include "dtfe/pointprocess.hpp"

namespace dtfe {

struct ExperimentSpec {
  std::uint64_t seed = 1;
  long replicates = 100;
  bool parallel = true;  // distribute replicates over OpenMP threads
};

// Sample moments with standard errors.  The variance of the sample
// variance uses the fourth central moment: Var(s^2) ~= m4/R - s^4 (R-3) /
// (R (R-1)).
struct MomentReport {
  long replicates = 0;
  double mean = 0.0;
  double variance = 0.0;
  double se_mean = 0.0;
  double se_variance = 0.0;
  double min = 0.0;
  double max = 0.0;
};

MomentReport summarize(const std::vector<double>& values);

using ReplicateFn = std::function<double(long replicate, Rng& rng)>;

// One value per replicate, each drawn from its own (seed, replicate)
// stream.  Threads only race on distinct vector slots and the reduction
// happens in index order afterwards, so the result is byte-identical to
// run_replicates_serial.
std::vector<double> run_replicates(const ExperimentSpec& spec,
                                   const ReplicateFn& fn);
std::vector<double> run_replicates_serial(const ExperimentSpec& spec,
                                          const ReplicateFn& fn);

// Palm-style simulation: a stationary Poisson process plus a point at the
// origin, tessellated without boundary correction on a large centred
// window.  Per replicate it records
//   self:      rate / |W0|
//   neighbour: (rate / |W0|) * sum over Delaunay neighbours y of
//              |W0 meet Wy| / |Wy|
//   excess:    (self + neighbour) / rate^2 - 1
// whose means estimate the second-moment constants of the field.  A
// replicate is guard-flagged (never rejected) when a circumball of a cell
// incident to the origin or its neighbours is not contained in the
// window, or the origin touches the hull; flagged replicates keep their
// values so the excess identity stays exact.
struct PalmSpec {
  int dim = 1;
  double rate = 1.0;
  double halfwidth = 12.0;
  std::uint64_t seed = 1;
  long replicates = 1000;
  bool parallel = true;
};

struct PalmReport {
  MomentReport self_term;
  MomentReport neighbour_term;
  MomentReport excess;
  std::vector<double> self_values;
  std::vector<double> neighbour_values;
  std::vector<double> excess_values;
  long guard_flags = 0;
};

PalmReport palm_weight_moments(const PalmSpec& spec);

}  // namespace dtfe
