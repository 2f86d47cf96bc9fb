#pragma once

#include <cstddef>
#include <vector>

namespace mfg {

/// Rows: A(j, j-1) = sub[j-1], A(j, j) = diag[j], A(j, j+1) = sup[j].
struct TridiagonalMatrix {
  std::vector<double> sub;   ///< length n - 1
  std::vector<double> diag;  ///< length n
  std::vector<double> sup;   ///< length n - 1

  std::size_t size() const { return diag.size(); }
  std::vector<double> apply(const std::vector<double>& v) const;
};

/// Thomas elimination without pivoting; intended for the diagonally dominant
/// systems the mass-map derivative produces. Throws SingularMatrix when a
/// pivot falls below 1e-14 times the largest entry, LengthMismatch on
/// malformed input.
std::vector<double> solve_tridiagonal(const TridiagonalMatrix& A,
                                      std::vector<double> rhs);

}  // namespace mfg
