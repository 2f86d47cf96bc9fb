#pragma once

#include <vector>

#include "mfg/geometry.hpp"
#include "mfg/tridiagonal.hpp"

namespace mfg {

/// Mass each bubble carries: the integral of the envelope over E_j, in closed
/// form. Defined for every level vector; empty bubbles contribute zero. The
/// equilibrium condition is mass_map(C) = weights.
std::vector<double> mass_map(const LevelVector& C, const DiscreteMeasure& m);

/// Same, reusing precomputed endpoints.
std::vector<double> mass_map(const LevelVector& C, const DiscreteMeasure& m,
                             const BubbleGeometry& geo);

double mass_total(const LevelVector& C, const DiscreteMeasure& m);

/// Derivative of the mass map, which is tridiagonal: a bubble's mass reacts
/// only to its own level and to the neighbors it touches. Off-diagonal entries
/// are minus the envelope value at the shared endpoint over twice the atom
/// gap (a rising neighbor steals mass), and vanish for zero-crossing
/// endpoints. Requires C in the feasible set (NotInFeasibleSet otherwise).
TridiagonalMatrix mass_map_jacobian(const LevelVector& C,
                                    const DiscreteMeasure& m);

/// Inner product (mass_map(C) - mass_map(D)) . (C - D); strictly positive for
/// distinct feasible points, which is what makes the equilibrium unique.
double monotonicity_gap(const LevelVector& C, const LevelVector& D,
                        const DiscreteMeasure& m);

/// Growth constants for the fixed-point fallback: whenever the largest level
/// reaches M, the mass at that index is at least delta times the level, which
/// confines the iteration to a bounded region.
struct CoercivityConstants {
  double delta_bar;  ///< min over atoms of (x_{j+1} - x_{j-1})/2, mirrored ends
  double M_bar;      ///< largest clipped half-gap cube difference
  double M;          ///< level threshold where the growth bound kicks in
  double delta;      ///< growth factor, in (0, 1)
};

/// Depends on positions only. Single-atom measures get the exact sentinel
/// delta_bar = +inf, M_bar = 0, delta = 1/2, M = (3 delta / 4)^2.
CoercivityConstants coercivity_constants(const DiscreteMeasure& m);

}  // namespace mfg
