#include "simsemi/theorem_engine.hpp"

#include <sstream>

#include "simsemi/canonical_forms.hpp"
#include "simsemi/idempotent_factory.hpp"
#include "simsemi/polynomial.hpp"

namespace simsemi {

const char* to_string(StepId id) noexcept {
  switch (id) {
    case StepId::S1: return "S1";
    case StepId::S2: return "S2";
    case StepId::S3: return "S3";
    case StepId::S4: return "S4";
    case StepId::S5: return "S5";
  }
  return "?";
}

std::vector<std::size_t> StepTrace::step2_ranks() const {
  for (const auto& r : records)
    if (r.step == StepId::S2) return r.rank_sequence;
  return {};
}

std::size_t StepTrace::count(StepId id) const {
  std::size_t k = 0;
  for (const auto& r : records) k += r.step == id;
  return k;
}

std::string StepTrace::summary(bool detailed) const {
  std::ostringstream os;
  auto ranks = [](const std::vector<std::size_t>& seq) {
    std::string s;
    for (std::size_t i = 0; i < seq.size(); ++i) s += (i ? " -> " : "") + std::to_string(seq[i]);
    return s;
  };
  if (detailed) {
    for (const auto& r : records) {
      os << to_string(r.step) << "  length " << r.certificate_length;
      if (r.step == StepId::S2) os << "  rk(M-I): " << ranks(r.rank_sequence);
      os << '\n';
    }
    return os.str();
  }
  for (StepId id : {StepId::S1, StepId::S2, StepId::S3, StepId::S4, StepId::S5}) {
    const auto k = count(id);
    if (k == 0) continue;
    os << to_string(id) << " x" << k;
    if (id == StepId::S2) {
      const auto seq = step2_ranks();
      os << " (" << (seq.empty() ? 0 : seq.size() - 1) << " iterations, rk(M-I): " << ranks(seq) << ')';
    }
    os << '\n';
  }
  return os.str();
}

namespace {

void record(StepTrace* trace, StepId id, const SimilarityCertificate& c,
            std::vector<std::size_t> ranks = {}) {
  if (trace) trace->records.push_back({id, c.length(), std::move(ranks)});
}

Matrix identity_like(const Matrix& a) { return Matrix::identity(a.field(), a.rows()); }

// Diag(I_{k-1}, 0) of size k.
Matrix truncated_identity(const FieldDescriptor& field, std::size_t k) {
  Matrix m = Matrix::identity(field, k);
  if (k) m(k - 1, k - 1) = Scalar::zero(field);
  return m;
}

// C(t^k - t).
Matrix shifted_companion(const FieldDescriptor& field, std::size_t k) {
  std::vector<Scalar> tail(k, Scalar::zero(field));
  tail[1] = Scalar::one(field);
  return companion(MonicPoly(field, std::move(tail)));
}

}  // namespace

SimilarityCertificate step1(const Matrix& a, StepTrace* trace) {
  if (!a.is_square()) fail(ErrorCode::DimensionMismatch, "step1 needs a square matrix");
  const auto& field = a.field();
  const std::size_t n = a.rows();
  const std::size_t p = rank(a);
  if (p == 0 || p == n) fail(ErrorCode::InvalidRank, "step1 needs 1 <= rank < size");

  // T^{-1} a T = Diag(Q, J_{i_1}, ...); reversing each Jordan block turns it
  // into its transpose, and J_k J_k^T = Diag(I_{k-1}, 0).
  const auto fit = fitting_decompose(a);
  std::vector<Matrix> blocks{Matrix::identity(field, fit.invertible_block.rows())};
  for (auto k : fit.nilpotent_block_sizes) blocks.push_back(reversal_matrix(field, k));
  const Matrix& t = fit.conjugator;
  const Matrix swap = t * block_diag(field, blocks) * inverse(t);

  SimilarityCertificate c{field, a, {identity_like(a), swap}, a * conjugate(a, swap)};
  ensure(rank(c.target) == p && zero_is_semisimple(c.target), "step1 product has the wrong shape");
  record(trace, StepId::S1, c);
  return c;
}

SimilarityCertificate step2(const SimilarityCertificate& m_cert, StepTrace* trace) {
  const auto& field = m_cert.field;
  const std::size_t n = m_cert.size();
  const Matrix id = Matrix::identity(field, n);
  SimilarityCertificate cert = m_cert;
  const std::size_t p = rank(cert.target);
  if (!zero_is_semisimple(cert.target))
    fail(ErrorCode::NotSemisimpleAtZero, "step2 needs a target with 0 as a semisimple eigenvalue");

  std::vector<std::size_t> ranks{rank(cert.target - id)};
  while (!is_idempotent(cert.target)) {
    ensure(ranks.size() <= p, "step2 exceeded rank(a) iterations");
    const Matrix& m = cert.target;
    const auto split = split_semisimple_zero(m);
    const auto form = rcf(split.invertible_part);
    const auto& factors = form.invariant_factors;

    // A factor other than t - 1 must exist, since m is not idempotent.
    // Prefer the largest degree; ties go to the last factor in the chain.
    std::size_t chosen = factors.size();
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (factors[i].is_t_minus_one()) continue;
      if (chosen == factors.size() || factors[i].degree() >= factors[chosen].degree()) chosen = i;
    }
    ensure(chosen < factors.size(), "non-idempotent target with all invariant factors t - 1");

    // Reorder the rcf blocks so the chosen companion comes last.
    std::vector<std::size_t> offsets;
    std::size_t offset = 0;
    for (const auto& f : factors) {
      offsets.push_back(offset);
      offset += f.degree();
    }
    const auto& chosen_poly = factors[chosen];
    const std::size_t d = chosen_poly.degree();
    const std::size_t rest = p - d;
    std::vector<Matrix> columns;
    for (std::size_t b = 0; b < factors.size(); ++b) {
      if (b == chosen) continue;
      for (std::size_t j = 0; j < factors[b].degree(); ++j) columns.push_back(form.conjugator.column(offsets[b] + j));
    }
    for (std::size_t j = 0; j < d; ++j) columns.push_back(form.conjugator.column(offsets[chosen] + j));
    const Matrix reordered = Matrix::hconcat(field, p, columns);

    // Diag(C(P), 0) has minimal polynomial t P(t) because P(0) != 0, with
    // e_1 + e_{d+1} as a cyclic vector; its Krylov basis gives C(t P(t)).
    ensure(!eval_at_zero(chosen_poly).is_zero(), "chosen invariant factor vanishes at 0");
    const Matrix with_zero = block_diag({companion(chosen_poly), Matrix(field, 1, 1)});
    Matrix w(field, d + 1, 1);
    w(0, 0) = Scalar::one(field);
    w(d, 0) = Scalar::one(field);
    const Matrix cyclic = cyclic_basis(with_zero, w);
    const Matrix shifted = companion(times_t(chosen_poly));
    ensure(inverse(cyclic) * with_zero * cyclic == shifted, "Krylov basis does not produce C(tP)");

    // basis^{-1} m basis = Diag(Q, C(tP), 0_{n-p-1}).
    const Matrix basis = split.conjugator *
                         block_diag({reordered, Matrix::identity(field, n - p)}) *
                         block_diag({Matrix::identity(field, rest), cyclic, Matrix::identity(field, n - p - 1)});
    const Matrix reversal =
        block_diag({Matrix::identity(field, rest), reversal_matrix(field, d + 1), Matrix::identity(field, n - p - 1)});
    const Matrix u = basis * reversal * inverse(basis);

    const SimilarityCertificate parts[] = {conjugate_certificate(cert, u), cert};
    SimilarityCertificate next = concat(parts);
    const std::size_t r = rank(next.target - id);
    ensure(r < ranks.back(), "rk(M - I) did not strictly decrease");
    ensure(rank(next.target) == p && zero_is_semisimple(next.target), "step2 product left the rank-p stratum");
    ranks.push_back(r);
    cert = std::move(next);
  }
  ensure(ranks.back() == n - p, "step2 ended away from rk(M - I) = n - p");
  record(trace, StepId::S2, cert, std::move(ranks));
  return cert;
}

SimilarityCertificate step3(const Matrix& b, const SimilarityCertificate& e_star_cert, StepTrace* trace) {
  const auto& field = e_star_cert.field;
  const std::size_t n = e_star_cert.size();
  const Matrix& e_star = e_star_cert.target;
  ensure(is_idempotent(e_star), "step3 needs an idempotent E*");
  const std::size_t p = rank(e_star);
  if (!b.is_square() || b.rows() != n) fail(ErrorCode::DimensionMismatch, "step3: size mismatch");
  if (rank(b) != p) fail(ErrorCode::RankMismatch, "step3: rank(b) differs from rank(E*)");

  // S^{-1} b S = Diag(Q, 0_{n-p}) and Diag(Q, 0_1) = P_1 ... P_N.
  const auto split = split_semisimple_zero(b);
  const auto idempotents = factor_q0_into_idempotents(split.invertible_part);
  std::vector<SimilarityCertificate> pieces;
  pieces.reserve(idempotents.size());
  for (const auto& pk : idempotents) {
    const Matrix padded = block_diag({pk, Matrix(field, n - p - 1, n - p - 1)});
    pieces.push_back(conjugate_certificate(e_star_cert, idempotent_conjugator(e_star, padded)));
  }
  SimilarityCertificate c = conjugate_certificate(concat(pieces), split.conjugator);
  ensure(c.target == b, "step3 product differs from b");
  record(trace, StepId::S3, c);
  return c;
}

SimilarityCertificate step4(const Matrix& b, const SimilarityCertificate& e_star_cert, StepTrace* trace) {
  const auto& field = e_star_cert.field;
  const std::size_t n = e_star_cert.size();
  if (!b.is_square() || b.rows() != n) fail(ErrorCode::DimensionMismatch, "step4: size mismatch");
  const std::size_t p = rank(e_star_cert.target);
  if (rank(b) != p) fail(ErrorCode::RankMismatch, "step4: rank(b) differs from rank(a)");
  const std::size_t overlap = kernel_image_overlap(b);
  if (overlap == 0) {
    auto c = step3(b, e_star_cert, trace);
    record(trace, StepId::S4, c);
    return c;
  }

  // T^{-1} b T = Diag(P, J_{i_1}, ..., J_{i_d}, 0); reversals transpose the
  // Jordan blocks and J_k^T = C(t^k - t) Diag(I_{k-1}, 0).
  const auto fit = fitting_decompose(b);
  const std::size_t q = fit.invertible_block.rows();
  std::vector<Matrix> reversal{Matrix::identity(field, q)};
  std::vector<Matrix> left{fit.invertible_block};
  std::vector<Matrix> right{Matrix::identity(field, q)};
  std::size_t long_blocks = 0;
  for (auto k : fit.nilpotent_block_sizes) {
    reversal.push_back(reversal_matrix(field, k));
    if (k >= 2) {
      ++long_blocks;
      left.push_back(shifted_companion(field, k));
      right.push_back(truncated_identity(field, k));
    } else {
      left.push_back(Matrix(field, 1, 1));
      right.push_back(Matrix(field, 1, 1));
    }
  }
  ensure(long_blocks == overlap, "Jordan blocks of size >= 2 do not match dim(Ker ∩ Im)");
  const Matrix k = block_diag(field, reversal);
  const Matrix x = block_diag(field, left);
  const Matrix y = block_diag(field, right);
  ensure(x * y == k * fit.canonical_matrix() * k, "J^T factorization failed");

  const Matrix g = fit.conjugator * k;
  const Matrix g_inv = inverse(g);
  const SimilarityCertificate parts[] = {step3(g * x * g_inv, e_star_cert, trace),
                                         step3(g * y * g_inv, e_star_cert, trace)};
  SimilarityCertificate c = concat(parts);
  ensure(c.target == b, "step4 product differs from b");
  record(trace, StepId::S4, c);
  return c;
}

SimilarityCertificate step5(const Matrix& b, const SimilarityCertificate& e_star_cert, std::size_t p,
                            StepTrace* trace) {
  const auto& field = e_star_cert.field;
  const std::size_t n = e_star_cert.size();
  if (!b.is_square() || b.rows() != n) fail(ErrorCode::DimensionMismatch, "step5: size mismatch");
  const std::size_t r = rank(b);
  if (r >= p) fail(ErrorCode::RankMismatch, "step5 needs rank(b) < p");
  if (p + 1 > n) fail(ErrorCode::RankMismatch, "step5 needs p < size");

  // b = Q Diag(I_r, 0) Q': Q starts with an image basis, Q' with the
  // corresponding coordinate rows.
  const auto ki = kernel_and_image(b);
  const Matrix q = extend_to_basis(ki.image);
  const Matrix coords = (inverse(q) * b).block(0, 0, r, n);
  const Matrix q_prime = extend_to_basis(coords.transpose()).transpose();
  Matrix pivot = Matrix::identity(field, n);
  for (std::size_t i = r; i < n; ++i) pivot(i, i) = Scalar::zero(field);
  ensure(q * pivot * q_prime == b, "rank factorization failed");

  // D_k = Diag(I_{k-1}, 0, I_{p+1-k}, 0_{n-p-1}), k = r+1 ... p+1 (1-based).
  auto d_matrix = [&](std::size_t k) {
    Matrix d = Matrix::identity(field, n);
    d(k - 1, k - 1) = Scalar::zero(field);
    for (std::size_t i = p + 1; i < n; ++i) d(i, i) = Scalar::zero(field);
    return d;
  };
  std::vector<Matrix> factors;
  for (std::size_t k = r + 1; k <= p + 1; ++k) factors.push_back(d_matrix(k));
  factors.front() = q * factors.front();
  factors.back() = factors.back() * q_prime;

  std::vector<SimilarityCertificate> parts;
  parts.reserve(factors.size());
  for (const auto& f : factors) parts.push_back(step4(f, e_star_cert, trace));
  SimilarityCertificate c = concat(parts);
  ensure(c.target == b, "step5 product differs from b");
  record(trace, StepId::S5, c);
  return c;
}

std::size_t certificate_length_budget(std::size_t p, std::size_t r) {
  return (p - r + 2) * 2 * (2 * p * p + 2 * p + 1) * (std::size_t{1} << (p + 1));
}

FactorResult factor(const Matrix& a, const Matrix& m, const FactorOptions& options) {
  if (!(a.field() == m.field())) fail(ErrorCode::FieldMismatch, "base and target are over different fields");
  if (!a.is_square() || !m.is_square() || a.rows() != m.rows())
    fail(ErrorCode::DimensionMismatch, "base and target must be square of equal size");
  const auto& field = a.field();
  const std::size_t n = a.rows();
  const std::size_t p = rank(a);
  if (p == n)
    fail(ErrorCode::NotSingular, "base matrix is invertible (rank " + std::to_string(p) +
                                     "); only singular similarity classes are covered");
  const std::size_t r = rank(m);
  if (r > p)
    fail(ErrorCode::RankTooHigh, "target has rank " + std::to_string(r) + " but the base has rank " +
                                     std::to_string(p) + "; products of conjugates never raise the rank");

  FactorResult result{{field, a, {}, m}, {}};
  if (p == 0) {
    // The class of 0 is {0}; m has rank 0 as well.
    result.certificate.conjugators.push_back(Matrix::identity(field, n));
  } else {
    const auto e_star = step2(step1(a, &result.trace), &result.trace);
    result.certificate = r == p ? step4(m, e_star, &result.trace) : step5(m, e_star, p, &result.trace);
  }
  ensure(result.certificate.length() <= certificate_length_budget(p, r),
         "certificate exceeds the length budget");
  if (options.self_check) {
    const auto report = verify(result.certificate);
    ensure(report.valid, "constructed certificate failed verification");
  }
  return result;
}

}  // namespace simsemi
