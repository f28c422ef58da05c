#pragma once

#include <utility>
#include <vector>

#include "simsemi/matrix.hpp"

namespace simsemi {

/// One elementary factor I + x y^T: a transvection (row != col) or a
/// dilation (row == col, scale = mu - 1 with mu != 0).
struct ElementaryFactor {
  std::size_t row;
  std::size_t col;
  Scalar coefficient;

  Matrix matrix(const FieldDescriptor& field, std::size_t size) const;
  bool is_dilation() const noexcept { return row == col; }
};

/// Factors T_1 ... T_s of an invertible q with T_1 * ... * T_s = q. Columns
/// are cleared left to right with transvections; the leftover determinant
/// becomes a single dilation at the last diagonal position. Identity
/// factors are omitted, so q = I gives an empty list.
std::vector<ElementaryFactor> gl_elementary_decomposition(const Matrix& q);

/// F1 = [[I, x], [0, 0]] and F2 = [[I, 0], [y, 0]] of size m, with
/// x an (m-1) x 1 column and y a 1 x (m-1) row. Both are rank m-1
/// idempotents and F1 F2 = Diag(I + x y, 0).
std::pair<Matrix, Matrix> idempotent_pair(const Matrix& x, const Matrix& y, std::size_t m);

/// Rank-p idempotents E_1 ... E_N of size p+1 with E_1 ... E_N = Diag(q, 0).
std::vector<Matrix> factor_q0_into_idempotents(const Matrix& q);

/// Invertible R with R e1 R^{-1} = e2 for idempotents of equal rank.
Matrix idempotent_conjugator(const Matrix& e1, const Matrix& e2);

}  // namespace simsemi
