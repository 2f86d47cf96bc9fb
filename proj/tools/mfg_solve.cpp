#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mfg/generator.hpp"
#include "mfg/instance_io.hpp"
#include "mfg/oracle.hpp"
#include "mfg/solver.hpp"

namespace {

struct CheckOutcome {
  bool ok = true;

  void record(const char* name, bool passed, const std::string& detail) {
    std::printf("[verify] %-14s %s  %s\n", name, passed ? "ok  " : "FAIL", detail.c_str());
    ok = ok && passed;
  }
};

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

/// Componentwise bound for |grid mass - analytic mass|: the midpoint-rule term
/// plus one cell of slack per endpoint shared with a neighbor, where binning
/// by winner and integrating disagree by up to the envelope height there.
std::vector<double> grid_bounds(const mfg::LevelVector& C, const mfg::DiscreteMeasure& m,
                                const mfg::BubbleGeometry& geo, double h) {
  double max_level = 0.0;
  for (double c : C) max_level = std::max(max_level, c);
  const double base = 5.0 * h * h * static_cast<double>(m.size()) * (1.0 + max_level);

  std::vector<double> bounds(m.size(), base);
  for (std::size_t j = 0; j < m.size(); ++j) {
    if (!geo[j].nonempty) continue;
    const auto height = [&](double y) {
      const double d = y - m.positions[j];
      return std::max(0.0, C[j] - d * d);
    };
    if (geo[j].left_case == mfg::EndpointCase::NeighborIntersection)
      bounds[j] += h * height(geo[j].alpha);
    if (geo[j].right_case == mfg::EndpointCase::NeighborIntersection)
      bounds[j] += h * height(geo[j].beta);
  }
  return bounds;
}

int run_verification(const mfg::DiscreteMeasure& m, const mfg::LevelVector& C,
                     double grid_step) {
  CheckOutcome outcome;
  const mfg::oracle::GridSpec grid{grid_step, 1.0};
  const mfg::BubbleGeometry geo = mfg::bubble_endpoints(C, m);

  const std::vector<double> analytic = mfg::mass_map(C, m, geo);
  const std::vector<double> gridded = mfg::oracle::grid_masses(C, m, grid);
  const std::vector<double> bounds = grid_bounds(C, m, geo, grid_step);
  double margin = std::numeric_limits<double>::infinity();
  bool grid_ok = true;
  for (std::size_t j = 0; j < m.size(); ++j) {
    const double err = std::fabs(gridded[j] - analytic[j]);
    grid_ok = grid_ok && err <= bounds[j];
    margin = std::min(margin, bounds[j] - err);
  }
  outcome.record("grid masses", grid_ok,
                 "margin " + short_num(margin) + " at step " + short_num(grid_step));

  const mfg::TridiagonalMatrix J = mfg::mass_map_jacobian(C, m);
  const auto fd = mfg::oracle::finite_difference_jacobian(C, m, 1e-6);
  double scale = 0.0;
  for (double v : J.diag) scale = std::max(scale, std::fabs(v));
  double tri_err = 0.0, far_err = 0.0;
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < m.size(); ++c) {
      double analytic_entry = 0.0;
      if (r == c) analytic_entry = J.diag[r];
      else if (c + 1 == r) analytic_entry = J.sub[c];
      else if (r + 1 == c) analytic_entry = J.sup[r];
      const double err = std::fabs(fd[r][c] - analytic_entry);
      if (r == c || c + 1 == r || r + 1 == c) tri_err = std::max(tri_err, err);
      else far_err = std::max(far_err, err);
    }
  const bool fd_ok = tri_err <= 1e-5 * std::max(1.0, scale) && far_err <= 1e-6;
  outcome.record("derivative", fd_ok,
                 "tridiagonal err " + short_num(tri_err) + ", elsewhere " + short_num(far_err));

  const mfg::oracle::NashReport nash = mfg::oracle::nash_check(C, m, grid);
  outcome.record("best response", nash.all_ok,
                 "worst violation " + short_num(nash.worst_violation) + " vs tolerance " +
                     short_num(nash.tolerance));

  return outcome.ok ? 0 : 4;
}

void print_summary(const mfg::Instance& inst, const mfg::DiscreteMeasure& m,
                   const mfg::SolveReport& rep) {
  const mfg::BubbleGeometry geo = mfg::bubble_endpoints(rep.C_star, m);
  if (!inst.label.empty()) std::printf("label: %s\n", inst.label.c_str());
  std::printf("atoms: %zu%s\n", m.size(), m.normalized ? " (weights normalized)" : "");
  std::printf("status: %s  path: %s  newton_iters: %d  lmap_iters: %ld\n",
              rep.converged ? "converged" : "NOT CONVERGED", mfg::to_string(rep.path),
              rep.newton_iters, rep.lmap_iters);
  std::printf("residual: %s  total mass: %s  min bubble: %s\n",
              short_num(rep.residual_history.back()).c_str(),
              short_num(mfg::mass_total(rep.C_star, m)).c_str(),
              short_num(rep.min_bubble_length).c_str());
  std::printf("%4s %12s %12s %12s %26s  %s\n", "j", "x_j", "a_j", "level", "support",
              "endpoint cases");
  for (std::size_t j = 0; j < m.size(); ++j) {
    const std::string support = geo[j].nonempty
                                    ? "[" + short_num(geo[j].alpha) + ", " +
                                          short_num(geo[j].beta) + "]"
                                    : "(empty)";
    std::printf("%4zu %12.6f %12.6f %12.6f %26s  %s / %s\n", j + 1, m.positions[j],
                m.weights[j], rep.C_star[j], support.c_str(),
                mfg::to_string(geo[j].left_case), mfg::to_string(geo[j].right_case));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Computes the unique equilibrium crowd density for a game where each of n "
      "starting points spreads into a parabolic bubble: levels C solve "
      "mass_map(C) = weights."};

  std::string input, gen_kind, out_path, density_path, instance_path;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::size_t samples = 2000;
  double tol = 1e-10;
  int max_iters = 50;
  double grid_step = 1e-4;
  bool verify = false;
  bool no_normalize = false;

  auto* input_opt = app.add_option("--input", input, "instance file to solve");
  auto* gen_opt = app.add_option(
      "--gen", gen_kind, "generate the instance: equispaced_random_weights | fully_random");
  app.add_option("--n", n, "atom count for --gen")->needs(gen_opt);
  app.add_option("--seed", seed, "seed for --gen")->needs(gen_opt);
  gen_opt->excludes(input_opt);

  app.add_option("--out", out_path, "write the solve result here");
  app.add_option("--emit-density", density_path, "write sampled density CSV here");
  app.add_option("--emit-instance", instance_path, "write the instance actually used");
  app.add_option("--samples", samples, "density sample count")->capture_default_str();
  app.add_option("--tol", tol, "residual target")->capture_default_str();
  app.add_option("--max-iters", max_iters, "Newton iteration cap")->capture_default_str();
  app.add_option("--grid-step", grid_step, "verification grid step")->capture_default_str();
  app.add_flag("--verify", verify, "audit the solution against grid oracles");
  app.add_flag("--no-normalize", no_normalize, "keep weights as given");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    mfg::Instance inst;
    if (!input.empty()) {
      inst = mfg::read_instance(input);
    } else if (!gen_kind.empty()) {
      mfg::GenKind kind;
      if (gen_kind == "equispaced_random_weights") kind = mfg::GenKind::EquispacedRandomWeights;
      else if (gen_kind == "fully_random") kind = mfg::GenKind::FullyRandom;
      else {
        std::cerr << "error: unknown --gen kind '" << gen_kind << "'\n";
        return 2;
      }
      inst = mfg::gen_instance(kind, n, seed);
    } else {
      std::cerr << "error: need exactly one of --input or --gen\n";
      return 2;
    }
    if (no_normalize) inst.normalize = false;
    if (!instance_path.empty()) mfg::write_instance(inst, instance_path);

    const mfg::DiscreteMeasure m =
        mfg::build_measure(inst.positions, inst.weights, inst.normalize);

    mfg::SolveOptions opts;
    opts.tol = tol;
    opts.max_newton_iters = max_iters;
    const mfg::SolveReport rep = mfg::solve(m, m.weights, opts);

    print_summary(inst, m, rep);
    if (!out_path.empty())
      mfg::write_result(mfg::make_result(m, rep, inst.label), out_path);
    if (!density_path.empty())
      mfg::write_density_samples(mfg::make_density(m, rep.C_star), samples, 1.0,
                                 density_path);

    if (!rep.converged) return 3;
    if (verify) return run_verification(m, rep.C_star, grid_step);
    return 0;
  } catch (const mfg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
