#pragma once

#include <cstddef>
#include <vector>

#include "mfg/common.hpp"

namespace mfg {

/// Starting distribution of the crowd: point masses a_j > 0 at strictly
/// increasing positions x_j.
struct DiscreteMeasure {
  std::vector<double> positions;
  std::vector<double> weights;
  bool normalized = false;

  std::size_t size() const { return positions.size(); }
};

/// Sorts atoms by position, validates, and optionally rescales the weights to
/// total mass one. Throws EmptyMeasure, LengthMismatch, DuplicatePosition,
/// NonpositiveWeight, or InvalidValue (non-finite input).
DiscreteMeasure build_measure(std::vector<double> positions,
                              std::vector<double> weights,
                              bool normalize);

}  // namespace mfg
