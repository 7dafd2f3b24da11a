#include <chrono>
#include <cstdio>
#include <cstring>
#include <vector>

#include "dtfe/estimators.hpp"
#include "dtfe/montecarlo.hpp"
#include "dtfe/pointprocess.hpp"

// Times the replicate loop serially and with the OpenMP schedule on the same
// workload and checks that both orderings produce byte-identical values.

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool bytes_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

struct Workload {
  const char* name;
  dtfe::ExperimentSpec spec;
  dtfe::ReplicateFn fn;
};

void run(const Workload& w) {
  dtfe::ExperimentSpec serial = w.spec;
  serial.parallel = false;
  dtfe::ExperimentSpec parallel = w.spec;
  parallel.parallel = true;

  auto t0 = Clock::now();
  const std::vector<double> vs = dtfe::run_replicates(serial, w.fn);
  const double ts = seconds_since(t0);

  t0 = Clock::now();
  const std::vector<double> vp = dtfe::run_replicates(parallel, w.fn);
  const double tp = seconds_since(t0);

  const bool same = bytes_equal(vs, vp);
  std::printf("%-22s %8ld reps   serial %8.3fs   parallel %8.3fs   "
              "speedup %5.2fx   identical %s\n",
              w.name, w.spec.replicates, ts, tp, tp > 0.0 ? ts / tp : 0.0,
              same ? "yes" : "NO");
  if (!same) std::exit(1);
}

}  // namespace

int main() {
  const dtfe::Window w1 = dtfe::Window::interval(-4.0, 4.0);
  const dtfe::Window w2 = dtfe::Window::rect(0.0, 6.0, 0.0, 6.0);
  const dtfe::Point x1{0.5, 0.0};
  const dtfe::Point x2{3.0, 3.0};

  Workload field1d{"field value, d=1",
                   {101, 4000, true},
                   [&](long, dtfe::Rng& rng) {
                     const auto pat =
                         dtfe::sample_homogeneous_poisson(3.0, w1, rng);
                     const auto est = dtfe::dtfe_field(pat, w1);
                     return dtfe::dtfe_evaluate(est, x1);
                   }};
  Workload field2d{"field value, d=2",
                   {102, 400, true},
                   [&](long, dtfe::Rng& rng) {
                     const auto pat =
                         dtfe::sample_homogeneous_poisson(8.0, w2, rng);
                     const auto est = dtfe::dtfe_field(pat, w2);
                     return dtfe::dtfe_evaluate(est, x2);
                   }};
  Workload kernels1d{"ball kernels, d=1",
                     {103, 20000, true},
                     [&](long, dtfe::Rng& rng) {
                       const auto pat =
                           dtfe::sample_homogeneous_poisson(5.0, w1, rng);
                       return dtfe::berman_diggle(pat, w1, x1, 0.4) +
                              dtfe::kernel_k(pat, w1, x1, 0.4);
                     }};

  run(field1d);
  run(field2d);
  run(kernels1d);
  std::puts("all workloads identical across orderings");
  return 0;
}
