#pragma once

#include <cstddef>
#include <vector>

#include "mfg/equilibrium.hpp"

namespace mfg::oracle {

/// Uniform grid over the support hull widened by `padding` on each side.
struct GridSpec {
  double step = 1e-4;
  double padding = 1.0;  ///< must stay >= 1 so off-grid minimizers cannot win
};

struct GridExtent {
  double lo = 0.0;
  double hi = 0.0;
};

GridExtent grid_extent(const LevelVector& C, const DiscreteMeasure& m,
                       const GridSpec& grid);

/// Brute-force counterpart of mass_map: midpoint-rule cell masses binned to
/// the atom whose profile wins that cell (ties to the lower index, cells where
/// the envelope is zero dropped). OpenMP over fixed blocks with a fixed-order
/// pairwise merge, so results do not depend on the thread count.
std::vector<double> grid_masses(const LevelVector& C, const DiscreteMeasure& m,
                                const GridSpec& grid);

/// Naive single-loop reference for grid_masses.
std::vector<double> grid_masses_serial(const LevelVector& C,
                                       const DiscreteMeasure& m,
                                       const GridSpec& grid);

/// Central differences of mass_map, column i from (F(C + eps e_i) -
/// F(C - eps e_i)) / (2 eps); returns a dense row-major matrix. Meaningful
/// away from the feasible-set boundary and from bubble detachments, where the
/// mass map has kinks.
std::vector<std::vector<double>> finite_difference_jacobian(
    const LevelVector& C, const DiscreteMeasure& m, double eps);

/// Grid audit of the equilibrium property for one atom: the travel-plus-crowd
/// cost (x_j - y)^2 + f(y) should bottom out exactly at the claimed level C_j,
/// the whole bubble should sit at that minimum, and nothing outside may beat it.
struct NashAtomReport {
  double best_value = 0.0;      ///< grid minimum of the cost
  double claimed_value = 0.0;   ///< C_j
  bool best_matches = false;    ///< |best - claimed| within tolerance
  bool argmin_set_ok = false;   ///< bubble flat at the minimum, exterior above it
  double worst_violation = 0.0;
};

struct NashReport {
  std::vector<NashAtomReport> atoms;
  double tolerance = 0.0;  ///< 2 * step * (hi - lo)
  bool all_ok = false;
  double worst_violation = 0.0;
};

/// Requires a feasible level vector (NotInFeasibleSet otherwise). Same blocked
/// deterministic parallel layout as grid_masses.
NashReport nash_check(const LevelVector& C, const DiscreteMeasure& m,
                      const GridSpec& grid);

/// Naive reference for nash_check.
NashReport nash_check_serial(const LevelVector& C, const DiscreteMeasure& m,
                             const GridSpec& grid);

/// max_j |mass_map(C)_j - a_j| against the measure's own weights.
double mass_residual(const LevelVector& C, const DiscreteMeasure& m);

}  // namespace mfg::oracle
