#include "simsemi/canonical_forms.hpp"

#include <algorithm>

namespace simsemi {

namespace {

void require_square(const Matrix& a, const char* who) {
  if (!a.is_square()) fail(ErrorCode::DimensionMismatch, std::string(who) + " needs a square matrix");
}

// Vector whose local minimal polynomial is the minimal polynomial of a.
// Basis vectors are scanned in index order; when e_i brings in a factor the
// current vector lacks, the two are merged through a coprime splitting of
// the lcm of their local minimal polynomials.
std::pair<Matrix, Poly> maximal_order_vector(const Matrix& a) {
  const auto& field = a.field();
  const std::size_t n = a.rows();
  const Matrix id = Matrix::identity(field, n);
  Matrix v = id.column(0);
  Poly f = local_minimal_polynomial(a, v);
  for (std::size_t i = 1; i < n && f.degree() < static_cast<long>(n); ++i) {
    Matrix w = id.column(i);
    Poly g = local_minimal_polynomial(a, w);
    if (g.divides(f)) continue;
    Poly left = f;
    Poly right = g / gcd(f, g);
    for (;;) {
      Poly h = gcd(left, right);
      if (h.degree() == 0) break;
      left = left / h;
      right = right * h;
    }
    v = (f / left).apply(a, v) + (g / right).apply(a, w);
    f = (left * right).monic();
    ensure(local_minimal_polynomial(a, v) == f, "merged vector has the wrong order");
  }
  return {std::move(v), std::move(f)};
}

struct CyclicSplit {
  Matrix conjugator;
  std::vector<MonicPoly> factors;  // descending: each divides the previous
};

CyclicSplit cyclic_decomposition(const Matrix& a) {
  const auto& field = a.field();
  const std::size_t n = a.rows();
  if (n == 0) return {Matrix(field, 0, 0), {}};

  auto [v, f] = maximal_order_vector(a);
  const auto d = static_cast<std::size_t>(f.degree());
  const Matrix krylov = krylov_matrix(a, v, d);

  // A functional with phi(a^i v) = [i == d-1]; the common kernel of
  // phi, phi a, ..., phi a^{d-1} is an invariant complement of span(krylov).
  Matrix target(field, d, 1);
  target(d - 1, 0) = Scalar::one(field);
  Matrix phi = solve(krylov.transpose(), target).transpose();
  std::vector<Matrix> rows;
  for (std::size_t i = 0; i < d; ++i) {
    rows.push_back(phi);
    phi = phi * a;
  }
  const Matrix functionals = Matrix::vconcat(field, n, rows);
  const Matrix complement = kernel_and_image(functionals).kernel;
  ensure(complement.cols() == n - d, "invariant complement has the wrong dimension");

  const Matrix parts[] = {krylov, complement};
  const Matrix basis = Matrix::hconcat(field, n, parts);
  const Matrix reduced = inverse(basis) * a * basis;
  const MonicPoly factor = MonicPoly::from_poly(f);
  ensure(reduced.block(0, 0, d, d) == companion(factor), "cyclic block is not a companion");
  ensure(reduced.block(0, d, d, n - d).is_zero() && reduced.block(d, 0, n - d, d).is_zero(),
         "complement is not invariant");

  CyclicSplit rest = cyclic_decomposition(reduced.block(d, d, n - d, n - d));
  const Matrix lift[] = {Matrix::identity(field, d), rest.conjugator};
  CyclicSplit out{basis * block_diag(field, lift), {factor}};
  for (auto& p : rest.factors) out.factors.push_back(std::move(p));
  return out;
}

}  // namespace

Matrix jordan_block(const FieldDescriptor& field, std::size_t k) {
  Matrix j(field, k, k);
  for (std::size_t i = 0; i + 1 < k; ++i) j(i, i + 1) = Scalar::one(field);
  return j;
}

Matrix FittingData::canonical_matrix() const {
  std::vector<Matrix> blocks{invertible_block};
  for (auto k : nilpotent_block_sizes) blocks.push_back(jordan_block(conjugator.field(), k));
  return block_diag(conjugator.field(), blocks);
}

FittingData fitting_decompose(const Matrix& a) {
  require_square(a, "fitting_decompose");
  const auto& field = a.field();
  const std::size_t n = a.rows();
  const auto ki = kernel_and_image(power(a, n));
  const std::size_t q = ki.image.cols();

  const Matrix parts[] = {ki.image, ki.kernel};
  const Matrix basis = Matrix::hconcat(field, n, parts);
  const Matrix reduced = inverse(basis) * a * basis;
  ensure(reduced.block(0, q, q, n - q).is_zero() && reduced.block(q, 0, n - q, q).is_zero(),
         "Fitting blocks are not invariant");

  Matrix invertible = reduced.block(0, 0, q, q);
  auto nil = nilpotent_jordan(reduced.block(q, q, n - q, n - q));
  const Matrix lift[] = {Matrix::identity(field, q), nil.conjugator};
  return {basis * block_diag(field, lift), std::move(invertible), std::move(nil.sizes)};
}

NilpotentJordan nilpotent_jordan(const Matrix& a) {
  require_square(a, "nilpotent_jordan");
  const auto& field = a.field();
  const std::size_t n = a.rows();
  if (n == 0) return {Matrix(field, 0, 0), {}};

  // kernels[j] = basis of Ker(a^j); stop at the nilpotency index.
  std::vector<Matrix> kernels{Matrix(field, n, 0)};
  Matrix p = Matrix::identity(field, n);
  while (kernels.back().cols() < n) {
    if (kernels.size() > n) fail(ErrorCode::NotNilpotent, "matrix is not nilpotent");
    p = p * a;
    kernels.push_back(kernel_and_image(p).kernel);
  }
  const std::size_t index = kernels.size() - 1;

  struct Chain {
    std::size_t length;
    Matrix top;
  };
  std::vector<Chain> chains;
  for (std::size_t level = index; level >= 1; --level) {
    // Span of Ker(a^{level-1}) plus the level-`level` vectors of longer chains.
    std::vector<Matrix> span;
    for (std::size_t j = 0; j < kernels[level - 1].cols(); ++j) span.push_back(kernels[level - 1].column(j));
    for (const auto& c : chains) span.push_back(power(a, c.length - level) * c.top);
    std::size_t current = span.empty() ? 0 : rank(Matrix::hconcat(field, n, span));
    ensure(current == span.size(), "chain vectors are dependent");
    for (std::size_t j = 0; j < kernels[level].cols() && current < kernels[level].cols(); ++j) {
      Matrix candidate = kernels[level].column(j);
      span.push_back(candidate);
      if (rank(Matrix::hconcat(field, n, span)) > current) {
        ++current;
        chains.push_back({level, std::move(candidate)});
      } else {
        span.pop_back();
      }
    }
  }

  std::vector<Matrix> columns;
  std::vector<std::size_t> sizes;
  for (const auto& c : chains) {
    for (std::size_t k = c.length; k-- > 0;) columns.push_back(power(a, k) * c.top);
    sizes.push_back(c.length);
  }
  ensure(columns.size() == n, "Jordan chains do not span the space");
  return {Matrix::hconcat(field, n, columns), std::move(sizes)};
}

Matrix RcfData::canonical_matrix() const {
  std::vector<Matrix> blocks;
  for (const auto& p : invariant_factors) blocks.push_back(companion(p));
  return block_diag(conjugator.field(), blocks);
}

RcfData rcf(const Matrix& a) {
  require_square(a, "rcf");
  const auto& field = a.field();
  const std::size_t n = a.rows();
  auto split = cyclic_decomposition(a);

  // Reverse the block order so the chain reads P_1 | P_2 | ... | P_m.
  std::vector<std::size_t> offsets;
  std::size_t offset = 0;
  for (const auto& p : split.factors) {
    offsets.push_back(offset);
    offset += p.degree();
  }
  std::vector<Matrix> columns;
  for (std::size_t b = split.factors.size(); b-- > 0;)
    for (std::size_t j = 0; j < split.factors[b].degree(); ++j)
      columns.push_back(split.conjugator.column(offsets[b] + j));
  std::reverse(split.factors.begin(), split.factors.end());
  return {Matrix::hconcat(field, n, columns), std::move(split.factors)};
}

std::vector<MonicPoly> invariant_factors(const Matrix& a) { return rcf(a).invariant_factors; }

SemisimpleZeroSplit split_semisimple_zero(const Matrix& m) {
  require_square(m, "split_semisimple_zero");
  const auto& field = m.field();
  const std::size_t n = m.rows();
  const auto ki = kernel_and_image(m);
  const std::size_t p = ki.image.cols();
  const Matrix parts[] = {ki.image, ki.kernel};
  const Matrix basis = Matrix::hconcat(field, n, parts);
  if (rank(basis) < n)
    fail(ErrorCode::NotSemisimpleAtZero, "kernel and image intersect: 0 is not a semisimple eigenvalue");
  const Matrix reduced = inverse(basis) * m * basis;
  ensure(reduced.block(0, p, n, n - p).is_zero() && reduced.block(p, 0, n - p, p).is_zero(),
         "semisimple split is not block diagonal");
  return {basis, reduced.block(0, 0, p, p)};
}

std::size_t kernel_image_overlap(const Matrix& m) {
  require_square(m, "kernel_image_overlap");
  return rank(m) - rank(m * m);
}

bool invariant_factors_equal(const Matrix& a, const Matrix& b) {
  if (!(a.field() == b.field())) fail(ErrorCode::FieldMismatch, "similarity test across fields");
  if (!a.is_square() || !b.is_square() || a.rows() != b.rows())
    fail(ErrorCode::DimensionMismatch, "similarity test needs square matrices of equal size");
  return invariant_factors(a) == invariant_factors(b);
}

Matrix cyclic_basis(const Matrix& x, const Matrix& w) {
  require_square(x, "cyclic_basis");
  Matrix v = krylov_matrix(x, w, x.rows());
  if (rank(v) < x.rows()) fail(ErrorCode::RankMismatch, "vector is not cyclic");
  return v;
}

}  // namespace simsemi
