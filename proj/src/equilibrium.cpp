#include "mfg/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace mfg {

namespace {

double cube(double t) { return t * t * t; }

// Envelope value at a bubble endpoint, clipped at zero so rounding near a
// zero crossing cannot leak a negative derivative entry.
double endpoint_height(double level, double endpoint, double center) {
  const double d = endpoint - center;
  return std::max(0.0, level - d * d);
}

}  // namespace

std::vector<double> mass_map(const LevelVector& C, const DiscreteMeasure& m,
                             const BubbleGeometry& geo) {
  if (C.size() != m.size() || geo.size() != m.size())
    fail(Errc::LengthMismatch, "mass_map arguments");
  std::vector<double> masses(m.size(), 0.0);
  for (std::size_t j = 0; j < m.size(); ++j) {
    const Bubble& b = geo[j];
    if (!b.nonempty) continue;
    const double lo = b.alpha - m.positions[j];
    const double hi = b.beta - m.positions[j];
    const double v = C[j] * (b.beta - b.alpha) - (cube(hi) - cube(lo)) / 3.0;
    masses[j] = std::max(0.0, v);
  }
  return masses;
}

std::vector<double> mass_map(const LevelVector& C, const DiscreteMeasure& m) {
  return mass_map(C, m, bubble_endpoints(C, m));
}

double mass_total(const LevelVector& C, const DiscreteMeasure& m) {
  const std::vector<double> masses = mass_map(C, m);
  return std::accumulate(masses.begin(), masses.end(), 0.0);
}

TridiagonalMatrix mass_map_jacobian(const LevelVector& C, const DiscreteMeasure& m) {
  if (!in_feasible_set(C, m))
    fail(Errc::NotInFeasibleSet, "mass-map derivative needs a feasible level vector");

  const std::size_t n = m.size();
  const BubbleGeometry geo = bubble_endpoints(C, m);
  TridiagonalMatrix J;
  J.diag.assign(n, 0.0);
  J.sub.assign(n - 1, 0.0);
  J.sup.assign(n - 1, 0.0);

  for (std::size_t j = 0; j < n; ++j) {
    const Bubble& b = geo[j];
    double left = 0.0, right = 0.0;
    if (j > 0 && b.left_case == EndpointCase::NeighborIntersection)
      left = endpoint_height(C[j], b.alpha, m.positions[j]) /
             (2.0 * (m.positions[j] - m.positions[j - 1]));
    if (j + 1 < n && b.right_case == EndpointCase::NeighborIntersection)
      right = endpoint_height(C[j], b.beta, m.positions[j]) /
              (2.0 * (m.positions[j + 1] - m.positions[j]));
    J.diag[j] = (b.beta - b.alpha) + left + right;
    // A growing neighbor pushes the shared interface into this bubble, so the
    // cross derivatives carry a minus sign.
    if (j + 1 < n) J.sup[j] = -right;
    if (j > 0) J.sub[j - 1] = -left;
  }
  return J;
}

double monotonicity_gap(const LevelVector& C, const LevelVector& D,
                        const DiscreteMeasure& m) {
  if (C.size() != m.size() || D.size() != m.size())
    fail(Errc::LengthMismatch, "monotonicity_gap arguments");
  const std::vector<double> FC = mass_map(C, m);
  const std::vector<double> FD = mass_map(D, m);
  double dot = 0.0;
  for (std::size_t j = 0; j < m.size(); ++j)
    dot += (FC[j] - FD[j]) * (C[j] - D[j]);
  return dot;
}

CoercivityConstants coercivity_constants(const DiscreteMeasure& m) {
  const std::size_t n = m.size();
  const double inf = std::numeric_limits<double>::infinity();
  CoercivityConstants cc{inf, 0.0, 0.0, 0.0};

  if (n == 1) {
    cc.delta = 0.5;
    const double threshold = 0.75 * cc.delta;
    cc.M = threshold * threshold;
    return cc;
  }

  // End atoms use a mirrored virtual neighbor, which turns their span term
  // into the adjacent gap and their cube deficit into zero.
  const auto& x = m.positions;
  double max_halfgap_sq = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double gap_l = (j > 0) ? x[j] - x[j - 1] : x[1] - x[0];
    const double gap_r = (j + 1 < n) ? x[j + 1] - x[j] : x[n - 1] - x[n - 2];
    cc.delta_bar = std::min(cc.delta_bar, (gap_l + gap_r) / 2.0);
    const double deficit = (cube(gap_r / 2.0) - cube(gap_l / 2.0)) / 3.0;
    cc.M_bar = std::max(cc.M_bar, deficit);
  }
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double half = (x[j + 1] - x[j]) / 2.0;
    max_halfgap_sq = std::max(max_halfgap_sq, half * half);
  }

  cc.delta = std::min(cc.delta_bar, 1.0) / 2.0;
  cc.M = std::max(cc.M_bar / (cc.delta_bar - cc.delta), max_halfgap_sq);
  return cc;
}

}  // namespace mfg
