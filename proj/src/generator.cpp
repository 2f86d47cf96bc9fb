#include "mfg/generator.hpp"

#include <algorithm>
#include <random>
#include <string>

namespace mfg {

namespace {

// mt19937_64 output mapped to [0, 1) by hand: the std distributions are
// implementation-defined, and the same seed must mean the same instance
// everywhere.
class Uniform {
 public:
  explicit Uniform(std::uint64_t seed) : engine_(seed) {}

  double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double next(double lo, double hi) { return lo + (hi - lo) * next(); }

 private:
  std::mt19937_64 engine_;
};

constexpr double kMinGap = 0.1;

}  // namespace

Instance gen_instance(GenKind kind, std::size_t n, std::uint64_t seed) {
  if (n == 0) fail(Errc::EmptyMeasure, "cannot generate an instance with no atoms");
  Uniform rng(seed);
  Instance inst;

  switch (kind) {
    case GenKind::EquispacedRandomWeights: {
      inst.label = "equispaced-n" + std::to_string(n) + "-s" + std::to_string(seed);
      inst.normalize = true;
      for (std::size_t j = 0; j < n; ++j) {
        inst.positions.push_back(static_cast<double>(j + 1));
        inst.weights.push_back(rng.next(0.05, 1.0));
      }
      break;
    }
    case GenKind::FullyRandom: {
      inst.label = "random-n" + std::to_string(n) + "-s" + std::to_string(seed);
      inst.normalize = true;
      const double span = static_cast<double>(n);
      while (true) {
        inst.positions.clear();
        for (std::size_t j = 0; j < n; ++j) inst.positions.push_back(rng.next(0.0, span));
        std::sort(inst.positions.begin(), inst.positions.end());
        bool spread = true;
        for (std::size_t j = 0; j + 1 < n; ++j)
          spread = spread && inst.positions[j + 1] - inst.positions[j] >= kMinGap;
        if (spread) break;
      }
      double total = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        inst.weights.push_back(rng.next(0.05, 1.0));
        total += inst.weights.back();
      }
      for (double& w : inst.weights) w /= total;
      break;
    }
  }
  return inst;
}

}  // namespace mfg
