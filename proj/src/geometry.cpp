#include "mfg/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace mfg {

namespace {

void check_lengths(const LevelVector& C, const DiscreteMeasure& m) {
  if (C.size() != m.size())
    fail(Errc::LengthMismatch, "level vector has " + std::to_string(C.size()) +
                                   " entries for " + std::to_string(m.size()) + " atoms");
}

}  // namespace

double parabola_intersection(std::size_t i, std::size_t j, const LevelVector& C,
                             const DiscreteMeasure& m) {
  check_lengths(C, m);
  if (i >= m.size() || j >= m.size() || i == j)
    fail(Errc::IndexOutOfRange, "intersection of profiles " + std::to_string(i) +
                                    " and " + std::to_string(j));
  const double xi = m.positions[i];
  const double xj = m.positions[j];
  return (C[i] - C[j]) / (2.0 * (xj - xi)) + (xj + xi) / 2.0;
}

BubbleGeometry bubble_endpoints(const LevelVector& C, const DiscreteMeasure& m) {
  check_lengths(C, m);
  const std::size_t n = m.size();
  const double inf = std::numeric_limits<double>::infinity();

  BubbleGeometry geo;
  geo.bubbles.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    Bubble& b = geo.bubbles[j];
    if (!(C[j] > 0.0)) {
      b.alpha = b.beta = m.positions[j];
      continue;
    }
    const double root = std::sqrt(C[j]);
    double from_below = -inf;
    double from_above = inf;
    for (std::size_t i = 0; i < j; ++i)
      from_below = std::max(from_below, parabola_intersection(i, j, C, m));
    for (std::size_t i = j + 1; i < n; ++i)
      from_above = std::min(from_above, parabola_intersection(i, j, C, m));

    const double own_lo = m.positions[j] - root;
    const double own_hi = m.positions[j] + root;
    if (from_below >= own_lo) {
      b.alpha = from_below;
      b.left_case = EndpointCase::NeighborIntersection;
    } else {
      b.alpha = own_lo;
      b.left_case = EndpointCase::ZeroCrossing;
    }
    if (from_above <= own_hi) {
      b.beta = from_above;
      b.right_case = EndpointCase::NeighborIntersection;
    } else {
      b.beta = own_hi;
      b.right_case = EndpointCase::ZeroCrossing;
    }
    b.nonempty = b.alpha < b.beta;
    if (!b.nonempty) {
      b.left_case = EndpointCase::Empty;
      b.right_case = EndpointCase::Empty;
    }
  }
  return geo;
}

double bubble_length(std::size_t j, const LevelVector& C, const DiscreteMeasure& m) {
  check_lengths(C, m);
  if (j >= m.size()) fail(Errc::IndexOutOfRange, "bubble " + std::to_string(j));
  if (!(C[j] > 0.0))
    fail(Errc::NonpositiveLevel, "bubble " + std::to_string(j) + " has level " +
                                     std::to_string(C[j]));
  const double root = std::sqrt(C[j]);
  double lo = m.positions[j] - root;
  double hi = m.positions[j] + root;
  if (j > 0) lo = std::max(lo, parabola_intersection(j - 1, j, C, m));
  if (j + 1 < m.size()) hi = std::min(hi, parabola_intersection(j, j + 1, C, m));
  return hi - lo;
}

bool in_feasible_set(const LevelVector& C, const DiscreteMeasure& m) {
  check_lengths(C, m);
  double max_level = 0.0;
  for (double c : C) {
    if (!(c > 0.0)) return false;
    max_level = std::max(max_level, c);
  }
  const double slack = 1e-12 * (1.0 + max_level);
  for (std::size_t j = 0; j < m.size(); ++j)
    if (!(bubble_length(j, C, m) > slack)) return false;
  return true;
}

double EquilibriumDensity::value(double x) const {
  double best = 0.0;
  for (std::size_t j = 0; j < levels.size(); ++j) {
    const double d = x - measure.positions[j];
    best = std::max(best, levels[j] - d * d);
  }
  return best;
}

EquilibriumDensity make_density(const DiscreteMeasure& m, const LevelVector& C) {
  check_lengths(C, m);
  return EquilibriumDensity{m, C, bubble_endpoints(C, m)};
}

}  // namespace mfg
