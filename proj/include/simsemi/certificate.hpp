#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "simsemi/matrix.hpp"

namespace simsemi {

/// Witness that `target` lies in the semigroup generated by the similarity
/// class of `base`:
///
///   target = (R_1 base R_1^{-1}) (R_2 base R_2^{-1}) ... (R_k base R_k^{-1})
///
/// The factors are stored as conjugators, so each one is in the class of
/// `base` by construction.
struct SimilarityCertificate {
  FieldDescriptor field;
  Matrix base;
  std::vector<Matrix> conjugators;
  Matrix target;

  std::size_t size() const noexcept { return base.rows(); }
  std::size_t length() const noexcept { return conjugators.size(); }
};

struct VerificationReport {
  bool valid = false;
  std::size_t factor_count = 0;
  /// Index of the first factor that failed its own checks, if any.
  std::optional<std::size_t> failing_index;
  std::optional<std::string> failure_reason;
};

/// Independent replay: every conjugator invertible, every factor with the
/// invariant factors of the base, and the left-to-right product equal to the
/// target. Failures are reported, never thrown.
VerificationReport verify(const SimilarityCertificate& c);

/// R_i -> u R_i and target -> u target u^{-1}.
SimilarityCertificate conjugate_certificate(const SimilarityCertificate& c, const Matrix& u);

/// Concatenates the conjugator lists; the target becomes the product of the
/// targets. All certificates must share field, size and base.
SimilarityCertificate concat(std::span<const SimilarityCertificate> cs);

/// Line-oriented text document:
///
///   simsemi-certificate 1
///   field gf:2
///   n 2
///   factor_count 2
///   base
///   <matrix>
///   target
///   <matrix>
///   conjugators
///   <matrix>
///   ...
///   end
std::string serialize(const SimilarityCertificate& c);
SimilarityCertificate parse_certificate(std::string_view text);
SimilarityCertificate read_certificate(const std::string& path);
void write_certificate(const SimilarityCertificate& c, const std::string& path);

}  // namespace simsemi
