#include "simsemi/polynomial.hpp"

namespace simsemi {

Poly::Poly(const FieldDescriptor& field, std::vector<Scalar> coeffs)
    : field_(field), coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_)
    if (!(c.field() == field_)) fail(ErrorCode::FieldMismatch, "polynomial coefficient field mismatch");
  trim();
}

Poly Poly::constant(const FieldDescriptor& field, const Scalar& c) { return Poly(field, {c}); }

Poly Poly::monomial(const FieldDescriptor& field, std::size_t degree) {
  std::vector<Scalar> c(degree + 1, Scalar::zero(field));
  c[degree] = Scalar::one(field);
  return Poly(field, std::move(c));
}

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  const Scalar inv = leading().inverse();
  Poly out = *this;
  for (auto& c : out.coeffs_) c *= inv;
  return out;
}

Poly Poly::operator+(const Poly& other) const {
  std::vector<Scalar> c(std::max(coeffs_.size(), other.coeffs_.size()), Scalar::zero(field_));
  for (std::size_t k = 0; k < coeffs_.size(); ++k) c[k] += coeffs_[k];
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) c[k] += other.coeffs_[k];
  return Poly(field_, std::move(c));
}

Poly Poly::operator-(const Poly& other) const {
  std::vector<Scalar> c(std::max(coeffs_.size(), other.coeffs_.size()), Scalar::zero(field_));
  for (std::size_t k = 0; k < coeffs_.size(); ++k) c[k] += coeffs_[k];
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) c[k] -= other.coeffs_[k];
  return Poly(field_, std::move(c));
}

Poly Poly::operator*(const Poly& other) const {
  if (is_zero() || other.is_zero()) return Poly(field_);
  std::vector<Scalar> c(coeffs_.size() + other.coeffs_.size() - 1, Scalar::zero(field_));
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * other.coeffs_[j];
  return Poly(field_, std::move(c));
}

Poly::DivMod Poly::divmod(const Poly& divisor) const {
  if (divisor.is_zero()) fail(ErrorCode::DegreeZero, "polynomial division by zero");
  std::vector<Scalar> rem = coeffs_;
  const std::size_t dd = divisor.coeffs_.size();
  if (rem.size() < dd) return {Poly(field_), *this};
  std::vector<Scalar> quot(rem.size() - dd + 1, Scalar::zero(field_));
  const Scalar inv = divisor.leading().inverse();
  for (std::size_t k = quot.size(); k-- > 0;) {
    const Scalar q = rem[k + dd - 1] * inv;
    quot[k] = q;
    if (q.is_zero()) continue;
    for (std::size_t j = 0; j < dd; ++j) rem[k + j] -= q * divisor.coeffs_[j];
  }
  return {Poly(field_, std::move(quot)), Poly(field_, std::move(rem))};
}

Poly Poly::operator/(const Poly& divisor) const { return divmod(divisor).quotient; }
Poly Poly::operator%(const Poly& divisor) const { return divmod(divisor).remainder; }

Matrix Poly::evaluate(const Matrix& a) const {
  const std::size_t n = a.rows();
  Matrix result(field_, n, n);
  const Matrix id = Matrix::identity(field_, n);
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    result = result * a;
    result += coeffs_[k] * id;
  }
  return result;
}

Matrix Poly::apply(const Matrix& a, const Matrix& v) const {
  Matrix w(field_, v.rows(), v.cols());
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    w = a * w;
    w += coeffs_[k] * v;
  }
  return w;
}

std::string Poly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  const bool rational = !field_.is_finite();
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    Scalar c = coeffs_[k];
    if (c.is_zero()) continue;
    bool negative = rational && sgn(c.rational()) < 0;
    if (negative) c = -c;
    if (out.empty())
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    std::string mono = k == 0 ? "" : (k == 1 ? "t" : "t^" + std::to_string(k));
    if (k == 0)
      out += c.to_string();
    else if (c.is_one())
      out += mono;
    else
      out += c.to_string() + "*" + mono;
  }
  return out;
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

Poly lcm(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) fail(ErrorCode::DegreeZero, "lcm of the zero polynomial");
  return ((a * b) / gcd(a, b)).monic();
}

// ---------------------------------------------------------------------------

MonicPoly MonicPoly::from_poly(const Poly& p) {
  if (p.is_zero() || !p.leading().is_one())
    fail(ErrorCode::Internal, "MonicPoly::from_poly needs a monic polynomial");
  std::vector<Scalar> tail;
  for (long k = 0; k < p.degree(); ++k) tail.push_back(-p.coeffs()[k]);
  return MonicPoly(p.field(), std::move(tail));
}

MonicPoly MonicPoly::linear(const FieldDescriptor& field, const Scalar& root) {
  return MonicPoly(field, {root});
}

Poly MonicPoly::to_poly() const {
  std::vector<Scalar> c;
  c.reserve(tail_.size() + 1);
  for (const auto& a : tail_) c.push_back(-a);
  c.push_back(Scalar::one(field_));
  return Poly(field_, std::move(c));
}

bool MonicPoly::is_t_minus_one() const { return tail_.size() == 1 && tail_[0].is_one(); }

Matrix companion(const MonicPoly& p) {
  const std::size_t d = p.degree();
  if (d == 0) fail(ErrorCode::DegreeZero, "companion matrix of a degree-0 polynomial");
  Matrix c(p.field(), d, d);
  for (std::size_t i = 1; i < d; ++i) c(i, i - 1) = Scalar::one(p.field());
  for (std::size_t i = 0; i < d; ++i) c(i, d - 1) = p.tail_coeffs()[i];
  return c;
}

MonicPoly times_t(const MonicPoly& p) {
  std::vector<Scalar> tail;
  tail.reserve(p.degree() + 1);
  tail.push_back(Scalar::zero(p.field()));
  for (const auto& a : p.tail_coeffs()) tail.push_back(a);
  return MonicPoly(p.field(), std::move(tail));
}

Scalar eval_at_zero(const MonicPoly& p) {
  if (p.degree() == 0) return Scalar::one(p.field());
  return -p.tail_coeffs()[0];
}

Poly local_minimal_polynomial(const Matrix& a, const Matrix& v) {
  const auto& field = a.field();
  const std::size_t n = a.rows();
  if (!a.is_square() || v.rows() != n || v.cols() != 1)
    fail(ErrorCode::DimensionMismatch, "local_minimal_polynomial: shape mismatch");

  // Incremental elimination over the Krylov vectors, tracking each reduced
  // vector as a combination of v, av, a^2 v, ...
  struct Reduced {
    std::vector<Scalar> vec;
    std::size_t pivot;
    std::vector<Scalar> combo;
  };
  std::vector<Reduced> basis;
  Matrix w = v;
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<Scalar> vec(w.entries().begin(), w.entries().end());
    std::vector<Scalar> combo(k + 1, Scalar::zero(field));
    combo[k] = Scalar::one(field);
    for (const auto& r : basis) {
      if (vec[r.pivot].is_zero()) continue;
      const Scalar f = vec[r.pivot];
      for (std::size_t i = r.pivot; i < n; ++i)
        if (!r.vec[i].is_zero()) vec[i] -= f * r.vec[i];
      for (std::size_t j = 0; j < r.combo.size(); ++j) combo[j] -= f * r.combo[j];
    }
    std::size_t pivot = 0;
    while (pivot < n && vec[pivot].is_zero()) ++pivot;
    if (pivot == n) return Poly(field, std::move(combo));
    const Scalar inv = vec[pivot].inverse();
    for (auto& x : vec) x *= inv;
    for (auto& x : combo) x *= inv;
    basis.push_back({std::move(vec), pivot, std::move(combo)});
    w = a * w;
  }
  fail(ErrorCode::Internal, "Krylov sequence did not become dependent");
}

MonicPoly minimal_polynomial(const Matrix& a) {
  if (!a.is_square() || a.rows() == 0)
    fail(ErrorCode::DimensionMismatch, "minimal_polynomial needs a nonempty square matrix");
  const auto& field = a.field();
  const Matrix id = Matrix::identity(field, a.rows());
  Poly acc = Poly::constant(field, Scalar::one(field));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    acc = lcm(acc, local_minimal_polynomial(a, id.column(i)));
    if (acc.evaluate(a).is_zero()) break;
  }
  ensure(acc.evaluate(a).is_zero(), "minimal polynomial does not annihilate");
  return MonicPoly::from_poly(acc);
}

Matrix krylov_matrix(const Matrix& a, const Matrix& v, std::size_t k) {
  std::vector<Matrix> cols;
  cols.reserve(k);
  Matrix w = v;
  for (std::size_t i = 0; i < k; ++i) {
    cols.push_back(w);
    if (i + 1 < k) w = a * w;
  }
  return Matrix::hconcat(a.field(), a.rows(), cols);
}

}  // namespace simsemi
