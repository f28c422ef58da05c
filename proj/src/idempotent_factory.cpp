#include "simsemi/idempotent_factory.hpp"

namespace simsemi {

Matrix ElementaryFactor::matrix(const FieldDescriptor& field, std::size_t size) const {
  Matrix m = Matrix::identity(field, size);
  m(row, col) += coefficient;
  return m;
}

std::vector<ElementaryFactor> gl_elementary_decomposition(const Matrix& q) {
  if (!q.is_square()) fail(ErrorCode::DimensionMismatch, "elementary decomposition needs a square matrix");
  const auto& field = q.field();
  const std::size_t p = q.rows();
  if (rank(q) < p) fail(ErrorCode::SingularMatrix, "elementary decomposition of a singular matrix");

  Matrix work = q;
  // Row operations applied to `work`, in order: row[target] += c * row[source].
  std::vector<ElementaryFactor> ops;
  auto add_row = [&](std::size_t target, std::size_t source, const Scalar& c) {
    if (c.is_zero()) return;
    for (std::size_t j = 0; j < p; ++j)
      if (!work(source, j).is_zero()) work(target, j) += c * work(source, j);
    ops.push_back({target, source, c});
  };

  for (std::size_t j = 0; j < p; ++j) {
    if (!work(j, j).is_one() && j + 1 < p) {
      std::size_t below = j + 1;
      while (below < p && work(below, j).is_zero()) ++below;
      if (below == p) {
        // Only the pivot is nonzero below the diagonal: borrow it.
        add_row(j + 1, j, Scalar::one(field));
        below = j + 1;
      }
      add_row(j, below, (Scalar::one(field) - work(j, j)) / work(below, j));
    }
    for (std::size_t i = 0; i < p; ++i) {
      if (i == j || work(i, j).is_zero()) continue;
      add_row(i, j, -(work(i, j) / work(j, j)));
    }
  }

  // ops_s ... ops_1 q = diag(1, ..., 1, det), so
  // q = ops_1^{-1} ... ops_s^{-1} diag(1, ..., 1, det).
  std::vector<ElementaryFactor> factors;
  factors.reserve(ops.size() + 1);
  for (const auto& op : ops) factors.push_back({op.row, op.col, -op.coefficient});
  if (p > 0 && !work(p - 1, p - 1).is_one())
    factors.push_back({p - 1, p - 1, work(p - 1, p - 1) - Scalar::one(field)});
  return factors;
}

std::pair<Matrix, Matrix> idempotent_pair(const Matrix& x, const Matrix& y, std::size_t m) {
  if (m < 2 || x.rows() != m - 1 || x.cols() != 1 || y.rows() != 1 || y.cols() != m - 1)
    fail(ErrorCode::DimensionMismatch, "idempotent_pair: shape mismatch");
  const auto& field = x.field();
  Matrix f1 = Matrix::identity(field, m);
  Matrix f2 = Matrix::identity(field, m);
  f1(m - 1, m - 1) = Scalar::zero(field);
  f2(m - 1, m - 1) = Scalar::zero(field);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    f1(i, m - 1) = x(i, 0);
    f2(m - 1, i) = y(0, i);
  }
  return {std::move(f1), std::move(f2)};
}

std::vector<Matrix> factor_q0_into_idempotents(const Matrix& q) {
  const auto& field = q.field();
  const std::size_t p = q.rows();
  const auto factors = gl_elementary_decomposition(q);
  if (factors.empty()) {
    Matrix e = Matrix::identity(field, p + 1);
    e(p, p) = Scalar::zero(field);
    return {std::move(e)};
  }
  std::vector<Matrix> out;
  out.reserve(2 * factors.size());
  for (const auto& f : factors) {
    // I + c e_row e_col^T  =  I + x y  with x = c e_row, y = e_col^T.
    Matrix x(field, p, 1);
    Matrix y(field, 1, p);
    x(f.row, 0) = f.coefficient;
    y(0, f.col) = Scalar::one(field);
    auto [f1, f2] = idempotent_pair(x, y, p + 1);
    out.push_back(std::move(f1));
    out.push_back(std::move(f2));
  }
  return out;
}

Matrix idempotent_conjugator(const Matrix& e1, const Matrix& e2) {
  if (!e1.is_square() || !e2.is_square() || e1.rows() != e2.rows())
    fail(ErrorCode::DimensionMismatch, "idempotent_conjugator: size mismatch");
  if (!is_idempotent(e1) || !is_idempotent(e2))
    fail(ErrorCode::NotIdempotent, "idempotent_conjugator: argument is not idempotent");
  auto basis = [](const Matrix& e) {
    const auto ki = kernel_and_image(e);
    const Matrix parts[] = {ki.image, ki.kernel};
    return std::pair{Matrix::hconcat(e.field(), e.rows(), parts), ki.image.cols()};
  };
  auto [b1, r1] = basis(e1);
  auto [b2, r2] = basis(e2);
  if (r1 != r2) fail(ErrorCode::RankMismatch, "idempotents of different rank are not similar");
  return b2 * inverse(b1);
}

}  // namespace simsemi
