#include "mfg/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace mfg {

namespace {

void check_targets(const DiscreteMeasure& m, const std::vector<double>& a) {
  if (a.size() != m.size())
    fail(Errc::LengthMismatch, "got " + std::to_string(a.size()) + " targets for " +
                                   std::to_string(m.size()) + " atoms");
  for (std::size_t j = 0; j < a.size(); ++j)
    if (!(a[j] > 0.0) || !std::isfinite(a[j]))
      fail(Errc::NonpositiveTarget, "target " + std::to_string(a[j]) + " at atom " +
                                        std::to_string(j));
}

void check_options(const SolveOptions& opts) {
  const bool ok = opts.tol > 0.0 && opts.max_newton_iters >= 0 &&
                  opts.max_lmap_iters >= 0 && opts.damping_shrink > 0.0 &&
                  opts.damping_shrink < 1.0 && opts.min_step > 0.0 &&
                  opts.lmap_relaxation > 0.0 && opts.lmap_relaxation <= 1.0;
  if (!ok) fail(Errc::InvalidValue, "solver options out of range");
}

double residual_inf(const std::vector<double>& masses, const std::vector<double>& a) {
  double r = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j)
    r = std::max(r, std::fabs(masses[j] - a[j]));
  return r;
}

double min_bubble(const LevelVector& C, const DiscreteMeasure& m) {
  const BubbleGeometry geo = bubble_endpoints(C, m);
  double shortest = 0.0;
  for (std::size_t j = 0; j < geo.size(); ++j) {
    const double len = geo[j].nonempty ? geo[j].beta - geo[j].alpha : 0.0;
    shortest = (j == 0) ? len : std::min(shortest, len);
  }
  return shortest;
}

void finish(SolveReport& rep, const DiscreteMeasure& m) {
  rep.min_bubble_length = min_bubble(rep.C_star, m);
}

/// Appends `tail` to `history`, dropping tail's leading entry when it repeats
/// the current last value (each stage re-records its starting residual).
void splice_history(std::vector<double>& history, const std::vector<double>& tail) {
  std::size_t start = 0;
  if (!history.empty() && !tail.empty() && history.back() == tail.front()) start = 1;
  history.insert(history.end(), tail.begin() + start, tail.end());
}

/// Core fixed-point loop from an explicit starting point. Stops converged at
/// residual <= tol; stops ready-for-Newton (path = FixedPointThenNewton) once
/// feasible with residual <= handoff; otherwise runs the budget out. The
/// relaxation halves whenever 20 consecutive iterations fail to improve the
/// best residual, since the undamped update can cycle when the mass map
/// reacts more than twice as fast as the levels.
SolveReport fixed_point_run(const DiscreteMeasure& m, const std::vector<double>& a,
                            LevelVector C, const SolveOptions& opts, double handoff,
                            long budget) {
  const std::size_t n = m.size();
  const CoercivityConstants cc = coercivity_constants(m);
  const double radius = 2.0 * static_cast<double>(n) * l1_norm(a) / cc.delta;

  SolveReport rep;
  rep.path = SolvePath::FixedPointOnly;

  std::vector<double> masses = mass_map(C, m);
  double res = residual_inf(masses, a);
  rep.residual_history.push_back(res);

  double omega = opts.lmap_relaxation;
  double best_res = res;
  int since_improvement = 0;

  for (long k = 0; k < budget; ++k) {
    if (res <= opts.tol) break;
    if (res <= handoff && in_feasible_set(C, m)) {
      rep.path = SolvePath::FixedPointThenNewton;
      break;
    }

    LevelVector next(n);
    for (std::size_t j = 0; j < n; ++j)
      next[j] = std::max(0.0, C[j] + a[j] - masses[j]);
    const double total = l1_norm(next);
    if (total > radius)
      for (double& v : next) v *= radius / total;
    if (omega < 1.0)
      for (std::size_t j = 0; j < n; ++j)
        next[j] = (1.0 - omega) * C[j] + omega * next[j];

    C = std::move(next);
    masses = mass_map(C, m);
    res = residual_inf(masses, a);
    rep.residual_history.push_back(res);
    ++rep.lmap_iters;

    if (res < best_res) {
      best_res = res;
      since_improvement = 0;
    } else if (++since_improvement >= 20) {
      omega = std::max(0.5 * omega, 1e-3);
      since_improvement = 0;
    }
  }

  rep.converged = res <= opts.tol;
  rep.C_star = std::move(C);
  return rep;
}

}  // namespace

LevelVector initial_guess(const DiscreteMeasure& m) {
  LevelVector C(m.size());
  for (std::size_t j = 0; j < m.size(); ++j)
    C[j] = std::pow(0.75 * m.weights[j], 2.0 / 3.0);
  return C;
}

SolveReport newton_solve(const DiscreteMeasure& m, const std::vector<double>& a,
                         const LevelVector& C0, const SolveOptions& opts) {
  check_targets(m, a);
  check_options(opts);
  if (!in_feasible_set(C0, m))
    fail(Errc::NotInFeasibleSet, "Newton needs a feasible starting point");

  SolveReport rep;
  rep.path = SolvePath::NewtonOnly;
  LevelVector C = C0;
  std::vector<double> masses = mass_map(C, m);
  double res = residual_inf(masses, a);
  rep.residual_history.push_back(res);

  while (res > opts.tol && rep.newton_iters < opts.max_newton_iters) {
    const TridiagonalMatrix J = mass_map_jacobian(C, m);
    std::vector<double> rhs(m.size());
    for (std::size_t j = 0; j < m.size(); ++j) rhs[j] = masses[j] - a[j];
    const std::vector<double> delta = solve_tridiagonal(J, std::move(rhs));

    double t = 1.0;
    bool accepted = false;
    LevelVector trial(m.size());
    while (t >= opts.min_step) {
      for (std::size_t j = 0; j < m.size(); ++j) trial[j] = C[j] - t * delta[j];
      if (in_feasible_set(trial, m)) {
        const std::vector<double> trial_masses = mass_map(trial, m);
        const double trial_res = residual_inf(trial_masses, a);
        if (trial_res <= res) {
          C = trial;
          masses = trial_masses;
          res = trial_res;
          accepted = true;
          break;
        }
      }
      t *= opts.damping_shrink;
    }
    if (!accepted) break;  // stalled: no feasible non-increasing step left

    ++rep.newton_iters;
    rep.residual_history.push_back(res);
  }

  rep.converged = res <= opts.tol;
  rep.C_star = std::move(C);
  finish(rep, m);
  return rep;
}

SolveReport fixed_point_solve(const DiscreteMeasure& m, const std::vector<double>& a,
                              const SolveOptions& opts) {
  check_targets(m, a);
  check_options(opts);
  const double handoff = 1e-3 * std::max(1.0, linf_norm(a));
  SolveReport rep = fixed_point_run(m, a, initial_guess(m), opts, handoff,
                                    opts.max_lmap_iters);
  finish(rep, m);
  return rep;
}

SolveReport solve(const DiscreteMeasure& m, const std::vector<double>& a,
                  const SolveOptions& opts) {
  check_targets(m, a);
  check_options(opts);

  SolveReport rep;
  LevelVector C = initial_guess(m);

  if (in_feasible_set(C, m)) {
    SolveReport first = newton_solve(m, a, C, opts);
    if (first.converged) return first;
    rep.newton_iters = first.newton_iters;
    rep.residual_history = std::move(first.residual_history);
    C = std::move(first.C_star);
  }

  double handoff = 1e-3 * std::max(1.0, linf_norm(a));
  long budget = opts.max_lmap_iters;
  bool newton_finished = false;

  while (budget > 0) {
    SolveReport fp = fixed_point_run(m, a, std::move(C), opts, handoff, budget);
    budget -= fp.lmap_iters;
    rep.lmap_iters += fp.lmap_iters;
    splice_history(rep.residual_history, fp.residual_history);
    C = std::move(fp.C_star);

    if (fp.converged) {
      rep.converged = true;
      rep.path = SolvePath::FixedPointOnly;
      break;
    }
    if (fp.path != SolvePath::FixedPointThenNewton) break;  // budget ran dry

    SolveReport nw = newton_solve(m, a, C, opts);
    rep.newton_iters += nw.newton_iters;
    splice_history(rep.residual_history, nw.residual_history);
    C = std::move(nw.C_star);

    if (nw.converged) {
      rep.converged = true;
      rep.path = SolvePath::FixedPointThenNewton;
      break;
    }
    handoff = std::max(1e-2 * handoff, opts.tol);
  }

  rep.C_star = std::move(C);
  if (!rep.converged) rep.path = SolvePath::FixedPointThenNewton;
  finish(rep, m);
  return rep;
}

}  // namespace mfg
