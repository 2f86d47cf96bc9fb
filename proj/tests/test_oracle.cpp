#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mfg/equilibrium.hpp"
#include "mfg/geometry.hpp"
#include "mfg/measure.hpp"
#include "mfg/oracle.hpp"
#include "mfg/solver.hpp"
#include "test_support.hpp"

using namespace mfg;
using testsup::Rng;

namespace {

DiscreteMeasure four_atom_example() {
  return build_measure({1.0, 2.25, 3.0, 3.75}, {0.25, 0.25, 0.25, 0.25}, false);
}

double componentwise_error(const std::vector<double>& grid,
                           const std::vector<double>& analytic) {
  double err = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j)
    err = std::max(err, std::fabs(grid[j] - analytic[j]));
  return err;
}

}  // namespace

TEST_CASE("grid extent covers the support hull and validates its inputs") {
  const DiscreteMeasure m = build_measure({0.0, 3.0}, {0.5, 0.5}, false);
  const oracle::GridExtent extent = oracle::grid_extent({1.0, 4.0}, m, {});
  CHECK(extent.lo == doctest::Approx(-3.0).epsilon(1e-15));
  CHECK(extent.hi == doctest::Approx(6.0).epsilon(1e-15));

  oracle::GridSpec bad_step;
  bad_step.step = 0.0;
  CHECK(testsup::thrown_code([&] { oracle::grid_extent({1.0, 1.0}, m, bad_step); }) ==
        Errc::InvalidValue);
  oracle::GridSpec thin_pad;
  thin_pad.padding = 0.5;
  CHECK(testsup::thrown_code([&] { oracle::grid_extent({1.0, 1.0}, m, thin_pad); }) ==
        Errc::InvalidValue);
}

TEST_CASE("grid integration recovers the single-parabola mass") {
  const DiscreteMeasure m = build_measure({0.0}, {1.0}, false);
  oracle::GridSpec spec;
  spec.step = 1e-4;
  const std::vector<double> G = oracle::grid_masses({1.0}, m, spec);
  CHECK(std::fabs(G[0] - 4.0 / 3.0) <= 1e-6);
}

TEST_CASE("dominated atoms collect no grid cells") {
  const DiscreteMeasure m = build_measure({0.0, 0.5, 1.0}, {0.3, 0.4, 0.3}, false);
  oracle::GridSpec spec;
  spec.step = 1e-4;
  const std::vector<double> G = oracle::grid_masses({1.0, 0.05, 1.0}, m, spec);
  CHECK(G[1] == 0.0);
  CHECK(G[0] > 1.0);
  CHECK(G[2] > 1.0);
}

TEST_CASE("grid integration confirms the solved four-atom masses") {
  const DiscreteMeasure m = four_atom_example();
  const SolveReport report = solve(m, m.weights, {});
  REQUIRE(report.converged);

  oracle::GridSpec spec;
  spec.step = 1e-5;
  const std::vector<double> G = oracle::grid_masses(report.C_star, m, spec);
  for (double mass : G) CHECK(mass == doctest::Approx(0.25).epsilon(4e-5));
  for (std::size_t j = 0; j < 4; ++j) CHECK(std::fabs(G[j] - 0.25) <= 1e-5);
}

TEST_CASE("parallel and serial grid integration agree") {
  Rng rng(131);
  for (int trial = 0; trial < 10; ++trial) {
    const DiscreteMeasure m = testsup::random_measure(rng, 1 + rng.index(6), false);
    const LevelVector C = testsup::feasible_levels(rng, m);
    oracle::GridSpec spec;
    spec.step = 1e-3;
    const std::vector<double> par = oracle::grid_masses(C, m, spec);
    const std::vector<double> ser = oracle::grid_masses_serial(C, m, spec);
    double scale = 1.0;
    for (double mass : ser) scale = std::max(scale, mass);
    CHECK(linf_diff(par, ser) <= 1e-12 * scale);
  }
}

#ifdef _OPENMP
TEST_CASE("grid integration is bitwise invariant to the thread count") {
  Rng rng(141);
  const DiscreteMeasure m = testsup::random_measure(rng, 6, false);
  const LevelVector C = testsup::feasible_levels(rng, m);
  oracle::GridSpec spec;
  spec.step = 1e-4;

  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const std::vector<double> one = oracle::grid_masses(C, m, spec);
  omp_set_num_threads(2);
  const std::vector<double> two = oracle::grid_masses(C, m, spec);
  omp_set_num_threads(saved);
  CHECK(one == two);
}
#endif

TEST_CASE("halving the step at least halves the detached-instance error") {
  const DiscreteMeasure m = build_measure({0.0, 30.0}, {0.5, 0.5}, false);
  const LevelVector C{0.7, 1.1};
  const std::vector<double> F = mass_map(C, m);

  oracle::GridSpec coarse, fine;
  coarse.step = 2e-3;
  fine.step = 1e-3;
  const double err_coarse = componentwise_error(oracle::grid_masses(C, m, coarse), F);
  const double err_fine = componentwise_error(oracle::grid_masses(C, m, fine), F);
  REQUIRE(err_coarse > 1e-12);
  CHECK(err_fine <= 0.6 * err_coarse);
}

TEST_CASE("grid error conforms to the interface-aware bound") {
  Rng rng(151);
  for (int trial = 0; trial < 8; ++trial) {
    const DiscreteMeasure m = testsup::random_measure(rng, 2 + rng.index(5), false);
    const LevelVector C = testsup::interior_levels(rng, m);
    const std::vector<double> F = mass_map(C, m);
    for (double h : {1e-3, 5e-4}) {
      oracle::GridSpec spec;
      spec.step = h;
      const std::vector<double> G = oracle::grid_masses(C, m, spec);
      const std::vector<double> bounds = testsup::grid_agreement_bounds(C, m, h);
      for (std::size_t j = 0; j < m.size(); ++j)
        CHECK(std::fabs(G[j] - F[j]) <= bounds[j]);
    }
  }
}

TEST_CASE("difference quotients recover the detached derivative") {
  // d/dC of (4/3)C^{3/2} is 2*sqrt(C), the bubble length.
  const DiscreteMeasure m = build_measure({5.0}, {1.0}, false);
  const LevelVector C{0.9};
  const auto fd = oracle::finite_difference_jacobian(C, m, 1e-6);
  CHECK(std::fabs(fd[0][0] - 2.0 * std::sqrt(C[0])) <= 1e-8);
}

TEST_CASE("difference quotients vanish beyond immediate neighbors") {
  Rng rng(161);
  const DiscreteMeasure m = testsup::random_measure(rng, 6, false);
  const LevelVector C = testsup::interior_levels(rng, m);
  const auto fd = oracle::finite_difference_jacobian(C, m, 1e-6);
  for (std::size_t row = 0; row < 6; ++row)
    for (std::size_t col = 0; col < 6; ++col)
      if (row > col + 1 || col > row + 1) CHECK(std::fabs(fd[row][col]) <= 1e-8);
}

TEST_CASE("nash scan confirms the single-atom equilibrium") {
  const DiscreteMeasure m = build_measure({0.0}, {1.0}, false);
  const double level = std::pow(0.75, 2.0 / 3.0);
  const oracle::NashReport report = oracle::nash_check({level}, m, {});
  REQUIRE(report.atoms.size() == 1);
  CHECK(report.all_ok);
  CHECK(report.atoms[0].best_matches);
  CHECK(report.atoms[0].argmin_set_ok);
  CHECK(std::fabs(report.atoms[0].best_value - level) <= report.tolerance);
  CHECK(report.atoms[0].claimed_value == level);
  CHECK(report.worst_violation >= 0.0);
}

TEST_CASE("nash scan confirms the detached pair") {
  const DiscreteMeasure m = build_measure({0.0, 10.0}, {0.5, 0.5}, false);
  const SolveReport solved = solve(m, m.weights, {});
  REQUIRE(solved.converged);
  const oracle::NashReport report = oracle::nash_check(solved.C_star, m, {});
  CHECK(report.all_ok);
  for (std::size_t j = 0; j < 2; ++j)
    CHECK(std::fabs(report.atoms[j].best_value - solved.C_star[j]) <= report.tolerance);
}

TEST_CASE("nash scan passes on a ten-atom lattice with random weights") {
  Rng rng(171);
  std::vector<double> positions(10), weights(10);
  for (std::size_t j = 0; j < 10; ++j) {
    positions[j] = static_cast<double>(j + 1);
    weights[j] = rng.uniform(0.05, 1.0);
  }
  const DiscreteMeasure m = build_measure(positions, weights, false);
  const SolveReport solved = solve(m, m.weights, {});
  REQUIRE(solved.converged);

  const oracle::NashReport report = oracle::nash_check(solved.C_star, m, {});
  CHECK(report.all_ok);
  for (const auto& atom : report.atoms) {
    CHECK(atom.best_matches);
    CHECK(atom.argmin_set_ok);
  }
}

TEST_CASE("nash scan rejects infeasible levels") {
  const DiscreteMeasure m = build_measure({0.0, 1.0}, {0.5, 0.5}, false);
  CHECK(testsup::thrown_code([&] { oracle::nash_check({1.0, -1.0}, m, {}); }) ==
        Errc::NotInFeasibleSet);
}

TEST_CASE("parallel and serial nash scans tell the same story") {
  Rng rng(181);
  for (int trial = 0; trial < 6; ++trial) {
    const DiscreteMeasure m = testsup::random_measure(rng, 1 + rng.index(5), true);
    const SolveReport solved = solve(m, m.weights, {});
    REQUIRE(solved.converged);

    oracle::GridSpec spec;
    spec.step = 1e-3;
    const oracle::NashReport par = oracle::nash_check(solved.C_star, m, spec);
    const oracle::NashReport ser = oracle::nash_check_serial(solved.C_star, m, spec);
    REQUIRE(par.atoms.size() == ser.atoms.size());
    CHECK(par.all_ok == ser.all_ok);
    CHECK(par.tolerance == ser.tolerance);
    for (std::size_t j = 0; j < par.atoms.size(); ++j) {
      CHECK(std::fabs(par.atoms[j].best_value - ser.atoms[j].best_value) <= 1e-13);
      CHECK(par.atoms[j].best_matches == ser.atoms[j].best_matches);
      CHECK(par.atoms[j].argmin_set_ok == ser.atoms[j].argmin_set_ok);
    }
  }
}

TEST_CASE("mass residual tracks the distance to the targets") {
  const DiscreteMeasure m = four_atom_example();
  CHECK(oracle::mass_residual({0.0, 0.0, 0.0, 0.0}, m) ==
        doctest::Approx(0.25).epsilon(1e-15));

  const SolveReport solved = solve(m, m.weights, {});
  REQUIRE(solved.converged);
  CHECK(oracle::mass_residual(solved.C_star, m) <= 1e-10);
  CHECK(oracle::mass_residual(initial_guess(m), m) >= 1e-3);
}
