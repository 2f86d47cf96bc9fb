#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace mfg {

enum class Errc {
  DuplicatePosition,
  NonpositiveWeight,
  EmptyMeasure,
  LengthMismatch,
  IndexOutOfRange,
  NonpositiveLevel,
  NotInFeasibleSet,
  SingularMatrix,
  NonpositiveTarget,
  ParseError,
  InvalidValue,
};

const char* to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& what);

double linf_norm(const std::vector<double>& v);
double linf_diff(const std::vector<double>& a, const std::vector<double>& b);
double l1_norm(const std::vector<double>& v);

}  // namespace mfg
