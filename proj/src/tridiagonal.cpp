#include "mfg/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mfg/common.hpp"

namespace mfg {

namespace {

void check_shape(const TridiagonalMatrix& A, std::size_t rhs_size) {
  const std::size_t n = A.size();
  if (n == 0) fail(Errc::LengthMismatch, "empty tridiagonal system");
  if (A.sub.size() + 1 != n || A.sup.size() + 1 != n)
    fail(Errc::LengthMismatch, "tridiagonal bands do not match the diagonal");
  if (rhs_size != n)
    fail(Errc::LengthMismatch, "right-hand side has " + std::to_string(rhs_size) +
                                   " entries for an order-" + std::to_string(n) +
                                   " system");
}

double max_abs_entry(const TridiagonalMatrix& A) {
  double m = 0.0;
  for (double v : A.diag) m = std::max(m, std::fabs(v));
  for (double v : A.sub) m = std::max(m, std::fabs(v));
  for (double v : A.sup) m = std::max(m, std::fabs(v));
  return m;
}

}  // namespace

std::vector<double> TridiagonalMatrix::apply(const std::vector<double>& v) const {
  check_shape(*this, v.size());
  const std::size_t n = size();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = diag[i] * v[i];
    if (i > 0) s += sub[i - 1] * v[i - 1];
    if (i + 1 < n) s += sup[i] * v[i + 1];
    out[i] = s;
  }
  return out;
}

std::vector<double> solve_tridiagonal(const TridiagonalMatrix& A,
                                      std::vector<double> rhs) {
  check_shape(A, rhs.size());
  const std::size_t n = A.size();
  const double floor = 1e-14 * max_abs_entry(A);

  std::vector<double> upper(n > 0 ? n - 1 : 0, 0.0);
  double pivot = A.diag[0];
  if (!(std::fabs(pivot) > floor)) fail(Errc::SingularMatrix, "pivot collapse at row 0");
  if (n > 1) upper[0] = A.sup[0] / pivot;
  rhs[0] /= pivot;

  for (std::size_t i = 1; i < n; ++i) {
    pivot = A.diag[i] - A.sub[i - 1] * upper[i - 1];
    if (!(std::fabs(pivot) > floor))
      fail(Errc::SingularMatrix, "pivot collapse at row " + std::to_string(i));
    if (i + 1 < n) upper[i] = A.sup[i] / pivot;
    rhs[i] = (rhs[i] - A.sub[i - 1] * rhs[i - 1]) / pivot;
  }

  for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= upper[i] * rhs[i + 1];
  return rhs;
}

}  // namespace mfg
