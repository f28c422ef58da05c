#include "simsemi/field.hpp"

#include <charconv>
#include <limits>

namespace simsemi {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::InvalidField: return "InvalidField";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::NotNilpotent: return "NotNilpotent";
    case ErrorCode::NotSemisimpleAtZero: return "NotSemisimpleAtZero";
    case ErrorCode::NotIdempotent: return "NotIdempotent";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::InvalidRank: return "InvalidRank";
    case ErrorCode::RankTooHigh: return "RankTooHigh";
    case ErrorCode::NotSingular: return "NotSingular";
    case ErrorCode::FieldNotFinite: return "FieldNotFinite";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::DegreeZero: return "DegreeZero";
    case ErrorCode::CertificateMismatch: return "CertificateMismatch";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

FieldDescriptor FieldDescriptor::prime(std::uint64_t p) {
  if (p >= (std::uint64_t{1} << 32) || !is_prime(p))
    fail(ErrorCode::InvalidField, "modulus " + std::to_string(p) + " is not a prime below 2^32");
  return FieldDescriptor(Kind::PrimeField, p);
}

FieldDescriptor FieldDescriptor::parse(std::string_view text) {
  if (text == "rational" || text == "rationals" || text == "Q") return rationals();
  constexpr std::string_view prefix = "gf:";
  if (text.substr(0, prefix.size()) == prefix) {
    auto digits = text.substr(prefix.size());
    std::uint64_t p = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty())
      fail(ErrorCode::Parse, "bad field modulus in '" + std::string(text) + "'");
    return prime(p);
  }
  fail(ErrorCode::Parse, "unknown field '" + std::string(text) + "' (expected rational or gf:<p>)");
}

std::string FieldDescriptor::to_string() const {
  if (kind_ == Kind::Rationals) return "rational";
  return "gf:" + std::to_string(modulus_);
}

// ---------------------------------------------------------------------------

namespace {

std::uint64_t reduce(long value, std::uint64_t p) {
  long r = value % static_cast<long>(p);
  if (r < 0) r += static_cast<long>(p);
  return static_cast<std::uint64_t>(r);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
  std::uint64_t result = 1 % p;
  base %= p;
  while (exp) {
    if (exp & 1) result = result * base % p;
    base = base * base % p;
    exp >>= 1;
  }
  return result;
}

}  // namespace

Scalar::Scalar(const FieldDescriptor& field, long value) {
  if (field.kind() == FieldDescriptor::Kind::Rationals)
    rep_ = mpq_class(value);
  else
    rep_ = Residue{reduce(value, field.modulus()), field.modulus()};
}

Scalar::Scalar(const FieldDescriptor& field, const mpq_class& value) {
  if (field.kind() == FieldDescriptor::Kind::Rationals) {
    mpq_class v = value;
    v.canonicalize();
    rep_ = std::move(v);
    return;
  }
  // Map a rational into GF(p): numerator * denominator^{-1}.
  const auto p = field.modulus();
  mpz_class num = value.get_num() % p;
  if (num < 0) num += p;
  mpz_class den = value.get_den() % p;
  if (den == 0) fail(ErrorCode::FieldMismatch, "denominator vanishes in gf:" + std::to_string(p));
  Scalar n(Residue{num.get_ui(), p});
  Scalar d(Residue{den.get_ui(), p});
  *this = n / d;
}

Scalar Scalar::parse(const FieldDescriptor& field, std::string_view text) {
  auto bad = [&]() -> Scalar {
    fail(ErrorCode::Parse, "bad scalar '" + std::string(text) + "' for field " + field.to_string());
  };
  if (text.empty()) return bad();
  if (field.is_finite()) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || v >= field.modulus()) return bad();
    return Scalar(Residue{v, field.modulus()});
  }
  auto is_integer = [](std::string_view s, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  if (!is_integer(num, true)) return bad();
  mpz_class n(std::string(num[0] == '+' ? num.substr(1) : num));
  mpz_class d = 1;
  if (slash != std::string_view::npos) {
    std::string_view den = text.substr(slash + 1);
    if (!is_integer(den, false)) return bad();
    d = mpz_class(std::string(den));
    if (d == 0) return bad();
  }
  return Scalar(field, mpq_class(n, d));
}

FieldDescriptor Scalar::field() const noexcept {
  if (std::holds_alternative<mpq_class>(rep_)) return FieldDescriptor::rationals();
  return FieldDescriptor(FieldDescriptor::Kind::PrimeField, std::get<Residue>(rep_).modulus);
}

bool Scalar::is_zero() const noexcept {
  if (auto* r = std::get_if<Residue>(&rep_)) return r->value == 0;
  return sgn(std::get<mpq_class>(rep_)) == 0;
}

bool Scalar::is_one() const noexcept {
  if (auto* r = std::get_if<Residue>(&rep_)) return r->value == 1;
  return std::get<mpq_class>(rep_) == 1;
}

std::string Scalar::to_string() const {
  if (auto* r = std::get_if<Residue>(&rep_)) return std::to_string(r->value);
  return std::get<mpq_class>(rep_).get_str();
}

std::uint64_t Scalar::residue() const noexcept {
  if (auto* r = std::get_if<Residue>(&rep_)) return r->value;
  return 0;
}

const mpq_class& Scalar::rational() const {
  if (auto* q = std::get_if<mpq_class>(&rep_)) return *q;
  fail(ErrorCode::FieldMismatch, "scalar is not rational");
}

void Scalar::check_same_field(const Scalar& other) const {
  if (rep_.index() != other.rep_.index())
    fail(ErrorCode::FieldMismatch, "mixing rational and prime-field scalars");
  if (auto* r = std::get_if<Residue>(&rep_)) {
    if (r->modulus != std::get<Residue>(other.rep_).modulus)
      fail(ErrorCode::FieldMismatch, "mixing scalars of different prime fields");
  }
}

Scalar Scalar::inverse() const {
  if (is_zero()) fail(ErrorCode::SingularMatrix, "division by zero");
  if (auto* r = std::get_if<Residue>(&rep_))
    return Scalar(Residue{pow_mod(r->value, r->modulus - 2, r->modulus), r->modulus});
  mpq_class inv = 1 / std::get<mpq_class>(rep_);
  Scalar out;
  out.rep_ = std::move(inv);
  return out;
}

Scalar Scalar::operator-() const {
  if (auto* r = std::get_if<Residue>(&rep_))
    return Scalar(Residue{r->value == 0 ? 0 : r->modulus - r->value, r->modulus});
  Scalar out;
  out.rep_ = mpq_class(-std::get<mpq_class>(rep_));
  return out;
}

Scalar& Scalar::operator+=(const Scalar& other) {
  check_same_field(other);
  if (auto* r = std::get_if<Residue>(&rep_)) {
    r->value = (r->value + std::get<Residue>(other.rep_).value) % r->modulus;
  } else {
    std::get<mpq_class>(rep_) += std::get<mpq_class>(other.rep_);
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& other) {
  check_same_field(other);
  if (auto* r = std::get_if<Residue>(&rep_)) {
    r->value = (r->value + r->modulus - std::get<Residue>(other.rep_).value) % r->modulus;
  } else {
    std::get<mpq_class>(rep_) -= std::get<mpq_class>(other.rep_);
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& other) {
  check_same_field(other);
  if (auto* r = std::get_if<Residue>(&rep_)) {
    r->value = r->value * std::get<Residue>(other.rep_).value % r->modulus;
  } else {
    std::get<mpq_class>(rep_) *= std::get<mpq_class>(other.rep_);
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& other) {
  check_same_field(other);
  return *this *= other.inverse();
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.rep_.index() != b.rep_.index()) return false;
  if (auto* r = std::get_if<Scalar::Residue>(&a.rep_)) {
    const auto& s = std::get<Scalar::Residue>(b.rep_);
    return r->modulus == s.modulus && r->value == s.value;
  }
  return std::get<mpq_class>(a.rep_) == std::get<mpq_class>(b.rep_);
}

}  // namespace simsemi
