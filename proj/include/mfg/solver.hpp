#pragma once

#include <vector>

#include "mfg/equilibrium.hpp"

namespace mfg {

struct SolveOptions {
  double tol = 1e-10;           ///< target residual inf-norm
  int max_newton_iters = 50;
  long max_lmap_iters = 100000;  ///< total fixed-point budget across rounds
  double damping_shrink = 0.5;   ///< backtracking factor, in (0, 1)
  double min_step = 1e-12;       ///< step fraction below which Newton reports a stall
  double lmap_relaxation = 1.0;  ///< starting relaxation of the fixed-point update, in (0, 1]
};

enum class SolvePath {
  NewtonOnly,
  FixedPointThenNewton,
  FixedPointOnly,
};

struct SolveReport {
  LevelVector C_star;
  std::vector<double> residual_history;  ///< inf-norm, starting value included
  int newton_iters = 0;
  long lmap_iters = 0;
  SolvePath path = SolvePath::NewtonOnly;
  bool converged = false;
  double min_bubble_length = 0.0;  ///< smallest bubble at C_star, conditioning hint
};

/// Componentwise (3 a_j / 4)^(2/3): the level a lone atom of weight a_j would
/// need, so the mass map never overshoots the targets from here.
LevelVector initial_guess(const DiscreteMeasure& m);

/// Damped Newton on mass_map(C) = a staying inside the feasible set: full
/// steps are shrunk by damping_shrink until the iterate stays feasible and the
/// residual does not increase. A step collapsing below min_step ends the run
/// with converged = false. Throws NotInFeasibleSet if C0 is infeasible,
/// NonpositiveTarget / LengthMismatch on bad targets.
SolveReport newton_solve(const DiscreteMeasure& m, const std::vector<double>& a,
                         const LevelVector& C0, const SolveOptions& opts = {});

/// Derivative-free fallback: iterates the projected update
/// C <- P((C + a - mass_map(C))_+) from initial_guess, where P clips to the
/// 1-norm ball of radius 2 n |a|_1 / delta. Stops converged at residual <= tol,
/// or hands off (converged = false, path = FixedPointThenNewton) once the
/// iterate is feasible with residual <= 1e-3 * max(1, |a|_inf).
SolveReport fixed_point_solve(const DiscreteMeasure& m,
                              const std::vector<double>& a,
                              const SolveOptions& opts = {});

/// Newton from the closed-form guess when feasible, otherwise (or on a stall)
/// fixed-point rounds with a tightening handoff threshold feeding Newton
/// restarts. converged = false after exhausting the budgets.
SolveReport solve(const DiscreteMeasure& m, const std::vector<double>& a,
                  const SolveOptions& opts = {});

}  // namespace mfg
