#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

#include "simsemi/error.hpp"

namespace simsemi {

/// The ground field of a computation: either the rationals or a prime field
/// GF(p) with p < 2^32 (so that residue products fit in 64 bits).
class FieldDescriptor {
 public:
  enum class Kind { Rationals, PrimeField };

  static FieldDescriptor rationals() noexcept { return FieldDescriptor(Kind::Rationals, 0); }
  /// Throws InvalidField unless `p` is a prime below 2^32.
  static FieldDescriptor prime(std::uint64_t p);
  /// Accepts `rational` (or `Q`) and `gf:<p>`.
  static FieldDescriptor parse(std::string_view text);

  Kind kind() const noexcept { return kind_; }
  bool is_finite() const noexcept { return kind_ == Kind::PrimeField; }
  /// Zero for the rationals.
  std::uint64_t modulus() const noexcept { return modulus_; }
  std::string to_string() const;

  friend bool operator==(const FieldDescriptor&, const FieldDescriptor&) = default;

 private:
  FieldDescriptor(Kind kind, std::uint64_t modulus) : kind_(kind), modulus_(modulus) {}
  friend class Scalar;

  Kind kind_;
  std::uint64_t modulus_;
};

bool is_prime(std::uint64_t n) noexcept;

/// An exact field element. Rationals are kept in lowest terms with a
/// positive denominator; residues are kept in [0, p).
class Scalar {
 public:
  Scalar() : rep_(Residue{0, 0}) {}
  Scalar(const FieldDescriptor& field, long value);
  Scalar(const FieldDescriptor& field, const mpq_class& value);

  static Scalar zero(const FieldDescriptor& field) { return Scalar(field, 0); }
  static Scalar one(const FieldDescriptor& field) { return Scalar(field, 1); }
  /// Parses `a` or `a/b` (b > 0) over the rationals, or a canonical residue
  /// in [0, p) over GF(p).
  static Scalar parse(const FieldDescriptor& field, std::string_view text);

  FieldDescriptor field() const noexcept;
  bool is_zero() const noexcept;
  bool is_one() const noexcept;
  std::string to_string() const;

  /// Residue value; only meaningful over GF(p).
  std::uint64_t residue() const noexcept;
  /// Rational value; only meaningful over the rationals.
  const mpq_class& rational() const;

  Scalar inverse() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& other);
  Scalar& operator-=(const Scalar& other);
  Scalar& operator*=(const Scalar& other);
  Scalar& operator/=(const Scalar& other);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

 private:
  struct Residue {
    std::uint64_t value;
    std::uint64_t modulus;
  };
  explicit Scalar(Residue r) : rep_(r) {}
  void check_same_field(const Scalar& other) const;

  std::variant<Residue, mpq_class> rep_;
};

}  // namespace simsemi
