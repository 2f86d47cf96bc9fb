#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mfg/geometry.hpp"
#include "mfg/solver.hpp"

namespace mfg {

/// One problem instance as stored on disk: `key = value` lines, arrays
/// whitespace-separated, `#` comments. Keys: positions, weights (required),
/// normalize, label (optional).
struct Instance {
  std::vector<double> positions;
  std::vector<double> weights;
  bool normalize = true;
  std::string label;
};

Instance parse_instance(std::istream& in);
Instance read_instance(const std::string& path);
void write_instance(const Instance& inst, const std::string& path);

/// Solve outcome in the same key = value format; numbers are written with
/// enough digits to round-trip exactly.
struct Result {
  std::string label;
  bool converged = false;
  std::string path;  ///< newton_only | fixed_point_then_newton | fixed_point_only
  int newton_iters = 0;
  long lmap_iters = 0;
  double residual_inf = 0.0;
  double total_mass = 0.0;
  double min_bubble_length = 0.0;
  std::vector<double> positions;
  std::vector<double> weights;
  std::vector<double> levels;
  std::vector<double> alpha;
  std::vector<double> beta;
  std::vector<std::string> left_case;   ///< neighbor_intersection | zero_crossing | empty
  std::vector<std::string> right_case;
};

Result make_result(const DiscreteMeasure& m, const SolveReport& report,
                   const std::string& label);
Result parse_result(std::istream& in);
Result read_result(const std::string& path);
void write_result(const Result& res, const std::string& path);

const char* to_string(SolvePath path);
const char* to_string(EndpointCase c);

/// CSV with header "x,f": the envelope sampled at `samples` evenly spaced
/// points spanning the support hull plus `padding` on each side.
void write_density_samples(const EquilibriumDensity& density,
                           std::size_t samples, double padding,
                           const std::string& path);

std::string format_double(double v);

}  // namespace mfg
