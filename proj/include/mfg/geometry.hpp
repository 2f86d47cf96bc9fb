#pragma once

#include <cstddef>
#include <vector>

#include "mfg/measure.hpp"

namespace mfg {

/// Peak heights C_j of the per-atom profiles f_j(x) = C_j - (x - x_j)^2.
/// The candidate density is the positive part of their upper envelope.
using LevelVector = std::vector<double>;

enum class EndpointCase {
  NeighborIntersection,  ///< endpoint set by a tie with another atom's profile
  ZeroCrossing,          ///< endpoint set by the profile's own root x_j +- sqrt(C_j)
  Empty,                 ///< bubble has no interior
};

/// Support interval E_j = [alpha, beta] of one atom's bubble, i.e. the set
/// where its profile wins the envelope and is positive.
struct Bubble {
  double alpha = 0.0;
  double beta = 0.0;
  EndpointCase left_case = EndpointCase::Empty;
  EndpointCase right_case = EndpointCase::Empty;
  bool nonempty = false;  ///< alpha < beta strictly
};

struct BubbleGeometry {
  std::vector<Bubble> bubbles;

  std::size_t size() const { return bubbles.size(); }
  const Bubble& operator[](std::size_t j) const { return bubbles[j]; }
};

/// Abscissa where profiles i and j have equal height:
///   (C_i - C_j) / (2 (x_j - x_i)) + (x_j + x_i) / 2.
/// Symmetric in (i, j); throws IndexOutOfRange when i == j or out of bounds.
double parabola_intersection(std::size_t i, std::size_t j, const LevelVector& C,
                             const DiscreteMeasure& m);

/// Endpoints of every bubble for an arbitrary level vector (no feasibility
/// assumption): the left end is the largest of all lower-index intersections
/// and the profile's own left root, symmetrically on the right. C_j <= 0
/// yields an empty bubble, as does a crossed pair alpha >= beta. Ties between
/// an intersection and the root are flagged NeighborIntersection.
BubbleGeometry bubble_endpoints(const LevelVector& C, const DiscreteMeasure& m);

/// Signed length of bubble j from the nearest-neighbor formula
///   min{gamma_{j,j+1}, x_j + sqrt(C_j)} - max{gamma_{j-1,j}, x_j - sqrt(C_j)},
/// with absent neighbors dropped. Requires C_j > 0 (NonpositiveLevel).
double bubble_length(std::size_t j, const LevelVector& C,
                     const DiscreteMeasure& m);

/// Membership in the set where every bubble has positive length. Uses the
/// scaled slack  length > 1e-12 * (1 + max_j C_j)  and requires C_j > 0.
bool in_feasible_set(const LevelVector& C, const DiscreteMeasure& m);

/// Callable upper envelope max{0, f_1, ..., f_n} with its bubble geometry.
struct EquilibriumDensity {
  DiscreteMeasure measure;
  LevelVector levels;
  BubbleGeometry geometry;

  double value(double x) const;
  double operator()(double x) const { return value(x); }
};

EquilibriumDensity make_density(const DiscreteMeasure& m, const LevelVector& C);

}  // namespace mfg
