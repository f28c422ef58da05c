#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "simsemi/certificate.hpp"

namespace simsemi {

enum class StepId { S1, S2, S3, S4, S5 };
const char* to_string(StepId id) noexcept;

struct StepRecord {
  StepId step;
  /// Length of the certificate the step produced.
  std::size_t certificate_length = 0;
  /// For S2: rk(M - I) for the starting matrix and after every iteration.
  std::vector<std::size_t> rank_sequence;
};

struct StepTrace {
  std::vector<StepRecord> records;

  /// rk(M - I) sequence of the (single) S2 run, empty if none ran.
  std::vector<std::size_t> step2_ranks() const;
  std::size_t count(StepId id) const;
  std::string summary(bool detailed) const;
};

/// Certificate (two factors) for a rank-p matrix in the semigroup whose
/// kernel and image are complementary. Requires 1 <= rank(a) < size.
SimilarityCertificate step1(const Matrix& a, StepTrace* trace = nullptr);

/// Drives the certificate's target down to a rank-p idempotent, one
/// rk(M - I)-reducing product per iteration.
SimilarityCertificate step2(const SimilarityCertificate& m_cert, StepTrace* trace = nullptr);

/// Certificate for b (rank p, 0 semisimple), built from idempotent copies of
/// the step-2 idempotent.
SimilarityCertificate step3(const Matrix& b, const SimilarityCertificate& e_star_cert,
                            StepTrace* trace = nullptr);

/// Certificate for any rank-p matrix b.
SimilarityCertificate step4(const Matrix& b, const SimilarityCertificate& e_star_cert,
                            StepTrace* trace = nullptr);

/// Certificate for b with rank(b) < p, as a product of p - r + 1 rank-p
/// matrices.
SimilarityCertificate step5(const Matrix& b, const SimilarityCertificate& e_star_cert, std::size_t p,
                            StepTrace* trace = nullptr);

struct FactorOptions {
  /// Replay the finished certificate through verify() before returning.
  bool self_check = true;
};

struct FactorResult {
  SimilarityCertificate certificate;
  StepTrace trace;
};

/// Writes m (rank m <= rank a, a singular) as a product of conjugates of a.
FactorResult factor(const Matrix& a, const Matrix& m, const FactorOptions& options = {});

/// Upper bound (p - r + 2) * 2 * (2p^2 + 2p + 1) * 2^(p+1) on certificate
/// length, asserted by factor().
std::size_t certificate_length_budget(std::size_t p, std::size_t r);

}  // namespace simsemi
