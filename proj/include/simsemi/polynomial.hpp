#pragma once

#include <string>
#include <vector>

#include "simsemi/matrix.hpp"

namespace simsemi {

/// Dense polynomial c_0 + c_1 t + ... + c_d t^d with no trailing zero
/// coefficients. The zero polynomial has an empty coefficient list.
class Poly {
 public:
  explicit Poly(const FieldDescriptor& field) : field_(field) {}
  Poly(const FieldDescriptor& field, std::vector<Scalar> coeffs);

  static Poly constant(const FieldDescriptor& field, const Scalar& c);
  static Poly monomial(const FieldDescriptor& field, std::size_t degree);

  const FieldDescriptor& field() const noexcept { return field_; }
  const std::vector<Scalar>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// Degree; -1 for the zero polynomial.
  long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
  const Scalar& leading() const { return coeffs_.back(); }
  Poly monic() const;

  Poly operator+(const Poly& other) const;
  Poly operator-(const Poly& other) const;
  Poly operator*(const Poly& other) const;
  friend bool operator==(const Poly&, const Poly&) = default;

  struct DivMod;
  DivMod divmod(const Poly& divisor) const;
  Poly operator/(const Poly& divisor) const;
  Poly operator%(const Poly& divisor) const;
  bool divides(const Poly& other) const { return (other % *this).is_zero(); }

  /// p(a), by Horner's scheme.
  Matrix evaluate(const Matrix& a) const;
  /// p(a) v without forming p(a).
  Matrix apply(const Matrix& a, const Matrix& v) const;

  std::string to_string() const;

 private:
  void trim();

  FieldDescriptor field_;
  std::vector<Scalar> coeffs_;
};

struct Poly::DivMod {
  Poly quotient;
  Poly remainder;
};

/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);
/// Monic lcm of nonzero polynomials.
Poly lcm(const Poly& a, const Poly& b);

/// Monic polynomial t^d - (a_0 + a_1 t + ... + a_{d-1} t^{d-1}). The stored
/// coefficients a_k are exactly the last column of the companion matrix.
class MonicPoly {
 public:
  MonicPoly(const FieldDescriptor& field, std::vector<Scalar> tail_coeffs)
      : field_(field), tail_(std::move(tail_coeffs)) {}
  /// `p` must be monic; the constant 1 becomes the degree-0 MonicPoly.
  static MonicPoly from_poly(const Poly& p);
  /// t - c.
  static MonicPoly linear(const FieldDescriptor& field, const Scalar& root);

  const FieldDescriptor& field() const noexcept { return field_; }
  std::size_t degree() const noexcept { return tail_.size(); }
  /// a_0 ... a_{d-1}.
  const std::vector<Scalar>& tail_coeffs() const noexcept { return tail_; }
  Poly to_poly() const;
  bool is_t_minus_one() const;

  friend bool operator==(const MonicPoly&, const MonicPoly&) = default;

  /// `t^3 - t` style, descending degree.
  std::string to_string() const { return to_poly().to_string(); }

 private:
  FieldDescriptor field_;
  std::vector<Scalar> tail_;
};

/// Companion matrix: ones on the subdiagonal, a_0 ... a_{d-1} down the last
/// column. Throws DegreeZero for the constant polynomial 1.
Matrix companion(const MonicPoly& p);

/// t * p(t).
MonicPoly times_t(const MonicPoly& p);

/// p(0), which is -a_0 when the degree is positive.
Scalar eval_at_zero(const MonicPoly& p);

/// Least-degree monic polynomial q with q(a) v = 0, for a column vector v.
Poly local_minimal_polynomial(const Matrix& a, const Matrix& v);

/// Least-degree monic annihilator of the square matrix a (size >= 1).
MonicPoly minimal_polynomial(const Matrix& a);

/// [v, a v, ..., a^{k-1} v] as columns.
Matrix krylov_matrix(const Matrix& a, const Matrix& v, std::size_t k);

}  // namespace simsemi
