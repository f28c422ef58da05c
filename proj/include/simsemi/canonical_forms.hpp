#pragma once

#include <cstddef>
#include <vector>

#include "simsemi/matrix.hpp"
#include "simsemi/polynomial.hpp"

namespace simsemi {

/// Upper-shift nilpotent Jordan block of size k (ones on the superdiagonal).
Matrix jordan_block(const FieldDescriptor& field, std::size_t k);

/// conjugator^{-1} a conjugator = Diag(invertible_block, J_{i_1}, ..., J_{i_N})
/// with i_1 >= i_2 >= ... >= 1.
struct FittingData {
  Matrix conjugator;
  Matrix invertible_block;
  std::vector<std::size_t> nilpotent_block_sizes;

  /// The block-diagonal matrix the conjugator is claimed to produce.
  Matrix canonical_matrix() const;
};

FittingData fitting_decompose(const Matrix& a);

struct NilpotentJordan {
  Matrix conjugator;
  std::vector<std::size_t> sizes;  // descending
};

/// Jordan chains for a nilpotent matrix; throws NotNilpotent otherwise.
NilpotentJordan nilpotent_jordan(const Matrix& a);

/// conjugator^{-1} a conjugator = Diag(C(P_1), ..., C(P_m)) with
/// P_1 | P_2 | ... | P_m.
struct RcfData {
  Matrix conjugator;
  std::vector<MonicPoly> invariant_factors;

  Matrix canonical_matrix() const;
};

RcfData rcf(const Matrix& a);

/// Just the invariant factors (same computation, conjugator dropped).
std::vector<MonicPoly> invariant_factors(const Matrix& a);

/// conjugator^{-1} m conjugator = Diag(invertible_part, 0); the conjugator's
/// columns are the image basis followed by the kernel basis of m.
struct SemisimpleZeroSplit {
  Matrix conjugator;
  Matrix invertible_part;
};

SemisimpleZeroSplit split_semisimple_zero(const Matrix& m);

/// dim(Ker m ∩ Im m) = rank(m) - rank(m^2).
std::size_t kernel_image_overlap(const Matrix& m);
inline bool zero_is_semisimple(const Matrix& m) { return kernel_image_overlap(m) == 0; }

/// True iff a and b are similar (their invariant factors coincide).
bool invariant_factors_equal(const Matrix& a, const Matrix& b);

/// Columns of a Krylov basis [w, x w, ..., x^{n-1} w] for a cyclic vector w.
/// With V the result, V^{-1} x V = companion(minimal polynomial of w).
/// Throws RankMismatch when w is not cyclic for x.
Matrix cyclic_basis(const Matrix& x, const Matrix& w);

}  // namespace simsemi
