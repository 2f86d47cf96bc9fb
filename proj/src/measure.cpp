#include "mfg/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace mfg {

DiscreteMeasure build_measure(std::vector<double> positions,
                              std::vector<double> weights, bool normalize) {
  if (positions.empty()) fail(Errc::EmptyMeasure, "measure needs at least one atom");
  if (positions.size() != weights.size())
    fail(Errc::LengthMismatch, "got " + std::to_string(positions.size()) +
                                   " positions and " + std::to_string(weights.size()) +
                                   " weights");

  const std::size_t n = positions.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(positions[i]) || !std::isfinite(weights[i]))
      fail(Errc::InvalidValue, "non-finite atom " + std::to_string(i));
    if (!(weights[i] > 0.0))
      fail(Errc::NonpositiveWeight, "weight " + std::to_string(weights[i]) +
                                        " at atom " + std::to_string(i));
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return positions[a] < positions[b]; });

  DiscreteMeasure m;
  m.positions.reserve(n);
  m.weights.reserve(n);
  for (std::size_t i : order) {
    m.positions.push_back(positions[i]);
    m.weights.push_back(weights[i]);
  }
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (!(m.positions[i] < m.positions[i + 1]))
      fail(Errc::DuplicatePosition, "position " + std::to_string(m.positions[i]) +
                                        " appears more than once");

  if (normalize) {
    const double total = std::accumulate(m.weights.begin(), m.weights.end(), 0.0);
    for (double& w : m.weights) w /= total;
    m.normalized = true;
  }
  return m;
}

}  // namespace mfg
