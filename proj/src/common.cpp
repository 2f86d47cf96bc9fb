#include "mfg/common.hpp"

#include <cmath>
#include <cstdlib>

namespace mfg {

const char* to_string(Errc code) {
  switch (code) {
    case Errc::DuplicatePosition: return "duplicate position";
    case Errc::NonpositiveWeight: return "nonpositive weight";
    case Errc::EmptyMeasure: return "empty measure";
    case Errc::LengthMismatch: return "length mismatch";
    case Errc::IndexOutOfRange: return "index out of range";
    case Errc::NonpositiveLevel: return "nonpositive level";
    case Errc::NotInFeasibleSet: return "not in feasible set";
    case Errc::SingularMatrix: return "singular matrix";
    case Errc::NonpositiveTarget: return "nonpositive target";
    case Errc::ParseError: return "parse error";
    case Errc::InvalidValue: return "invalid value";
  }
  return "unknown error";
}

void fail(Errc code, const std::string& what) { throw Error(code, what); }

double linf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

double linf_diff(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) fail(Errc::LengthMismatch, "linf_diff arguments");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

double l1_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += std::fabs(x);
  return s;
}

}  // namespace mfg
