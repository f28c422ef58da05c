#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "simsemi/matrix.hpp"
#include "simsemi/polynomial.hpp"

namespace simsemi {

struct ClosureOptions {
  /// Worker threads for the BFS frontier; 1 keeps everything sequential.
  unsigned jobs = 1;
  /// Refuse universes with more than this many matrices (q^(n^2)).
  std::uint64_t max_universe = std::uint64_t{1} << 25;
};

/// Set of n x n matrices over GF(q), each interned as the base-q integer
/// formed by its row-major entries (first entry least significant).
class MatrixSet {
 public:
  MatrixSet(const FieldDescriptor& field, std::size_t n);

  const FieldDescriptor& field() const noexcept { return field_; }
  std::size_t dimension() const noexcept { return n_; }
  std::size_t size() const noexcept { return count_; }
  std::uint64_t universe() const noexcept { return universe_; }

  bool insert(const Matrix& m);
  bool contains(const Matrix& m) const;
  bool insert_key(std::uint64_t key);
  bool contains_key(std::uint64_t key) const;
  /// Members in increasing key order.
  std::vector<std::uint64_t> keys() const;
  std::vector<Matrix> matrices() const;

  std::uint64_t key_of(const Matrix& m) const;
  Matrix matrix_of(std::uint64_t key) const;

 private:
  FieldDescriptor field_;
  std::size_t n_;
  std::uint64_t universe_;
  std::vector<std::uint64_t> bits_;
  std::size_t count_ = 0;
};

/// Orbit {R a R^{-1}} by BFS over conjugation with transvections (λ = 1)
/// and one dilation by a primitive element.
MatrixSet similarity_class(const Matrix& a, const ClosureOptions& options = {});

/// Least multiplicatively closed superset of the generators.
MatrixSet semigroup_closure(const MatrixSet& generators, const ClosureOptions& options = {});

/// All n x n matrices of rank <= p.
MatrixSet s_p_set(const FieldDescriptor& field, std::size_t n, std::size_t p,
                  const ClosureOptions& options = {});

struct ClosureReport {
  FieldDescriptor field;
  std::size_t n = 0;
  std::size_t rank = 0;
  Matrix generator;
  std::vector<MonicPoly> generator_canonical_form;
  std::size_t class_size = 0;
  std::size_t closure_size = 0;
  std::size_t s_p_size = 0;
  /// closure ⊆ S_p elementwise and |closure| = |S_p|.
  bool equal = false;
};

/// Closure of the similarity class of a singular a, compared with S_p.
ClosureReport theorem_check(const Matrix& a, const ClosureOptions& options = {});

/// theorem_check for one representative of every singular similarity class
/// of n x n matrices over the field, in increasing key order of the
/// representatives.
std::vector<ClosureReport> theorem_sweep(const FieldDescriptor& field, std::size_t n,
                                         const ClosureOptions& options = {});

std::string format_report(const ClosureReport& report);
std::string report_json(const ClosureReport& report);

}  // namespace simsemi
