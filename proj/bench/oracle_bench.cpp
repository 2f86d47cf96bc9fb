// Times the OpenMP grid kernels against their serial references on one
// generated instance and reports the largest discrepancy alongside the
// speedup. `--quick` shrinks the workload enough for a smoke run.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mfg/generator.hpp"
#include "mfg/oracle.hpp"
#include "mfg/solver.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

template <typename F>
double time_best_of(int reps, F&& body) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto start = Clock::now();
    body();
    best = std::min(best, seconds_since(start));
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t n = 12;
  double step = 2e-6;
  int reps = 3;
  std::uint64_t seed = 20240901;

  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--quick")) {
      step = 1e-4;
      reps = 1;
    } else if (!std::strcmp(argv[i], "--n") && i + 1 < argc) {
      n = std::strtoull(argv[++i], nullptr, 10);
    } else if (!std::strcmp(argv[i], "--step") && i + 1 < argc) {
      step = std::strtod(argv[++i], nullptr);
    } else if (!std::strcmp(argv[i], "--reps") && i + 1 < argc) {
      reps = std::atoi(argv[++i]);
    } else if (!std::strcmp(argv[i], "--seed") && i + 1 < argc) {
      seed = std::strtoull(argv[++i], nullptr, 10);
    } else {
      std::fprintf(stderr, "usage: %s [--quick] [--n N] [--step H] [--reps R] [--seed S]\n",
                   argv[0]);
      return 2;
    }
  }

  const mfg::Instance inst =
      mfg::gen_instance(mfg::GenKind::EquispacedRandomWeights, n, seed);
  const mfg::DiscreteMeasure m =
      mfg::build_measure(inst.positions, inst.weights, inst.normalize);
  const mfg::SolveReport rep = mfg::solve(m, m.weights);
  if (!rep.converged) {
    std::fprintf(stderr, "instance did not converge, nothing to benchmark\n");
    return 1;
  }

#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (built without OpenMP)\n");
#endif
  std::printf("instance: %s  grid step: %g  reps: %d\n", inst.label.c_str(), step, reps);

  const mfg::oracle::GridSpec grid{step, 1.0};

  std::vector<double> serial_masses, parallel_masses;
  const double t_serial =
      time_best_of(reps, [&] { serial_masses = mfg::oracle::grid_masses_serial(rep.C_star, m, grid); });
  const double t_parallel =
      time_best_of(reps, [&] { parallel_masses = mfg::oracle::grid_masses(rep.C_star, m, grid); });
  double mass_diff = 0.0;
  for (std::size_t j = 0; j < m.size(); ++j)
    mass_diff = std::max(mass_diff, std::fabs(serial_masses[j] - parallel_masses[j]));
  std::printf("grid_masses   serial %8.4fs   parallel %8.4fs   speedup %5.2fx   max diff %.3e\n",
              t_serial, t_parallel, t_serial / t_parallel, mass_diff);

  mfg::oracle::NashReport nash_serial, nash_parallel;
  const double t_nash_serial =
      time_best_of(reps, [&] { nash_serial = mfg::oracle::nash_check_serial(rep.C_star, m, grid); });
  const double t_nash_parallel =
      time_best_of(reps, [&] { nash_parallel = mfg::oracle::nash_check(rep.C_star, m, grid); });
  double nash_diff = 0.0;
  for (std::size_t j = 0; j < m.size(); ++j)
    nash_diff = std::max(nash_diff, std::fabs(nash_serial.atoms[j].best_value -
                                              nash_parallel.atoms[j].best_value));
  std::printf("nash_check    serial %8.4fs   parallel %8.4fs   speedup %5.2fx   max diff %.3e\n",
              t_nash_serial, t_nash_parallel, t_nash_serial / t_nash_parallel, nash_diff);
  std::printf("nash verdicts agree: %s\n",
              nash_serial.all_ok == nash_parallel.all_ok ? "yes" : "NO");

  const bool consistent = mass_diff < 1e-9 && nash_diff < 1e-9 &&
                          nash_serial.all_ok == nash_parallel.all_ok;
  return consistent ? 0 : 1;
}
