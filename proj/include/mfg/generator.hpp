#pragma once

#include <cstdint>

#include "mfg/instance_io.hpp"

namespace mfg {

enum class GenKind {
  EquispacedRandomWeights,  ///< positions 1..n, weights uniform in [0.05, 1]
  FullyRandom,              ///< n sorted uniforms on [0, n] with min gap 0.1, normalized
};

/// Deterministic: the same (kind, n, seed) always yields the same instance,
/// independent of platform. Throws EmptyMeasure when n == 0.
Instance gen_instance(GenKind kind, std::size_t n, std::uint64_t seed);

}  // namespace mfg
