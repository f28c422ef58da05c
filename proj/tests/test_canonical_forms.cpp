#include <doctest.h>

#include "simsemi/canonical_forms.hpp"
#include "test_support.hpp"

using namespace simsemi;
using namespace simsemi::testing;

namespace {

Matrix m(const FieldDescriptor& f, std::initializer_list<std::initializer_list<long>> rows) {
  return Matrix::from_rows(f, rows);
}

MonicPoly monic(const FieldDescriptor& f, std::initializer_list<long> coeffs) {
  std::vector<Scalar> c;
  for (long x : coeffs) c.emplace_back(f, x);
  return MonicPoly::from_poly(Poly(f, c));
}

std::vector<Matrix> all_matrices_gf2(std::size_t n) {
  const auto f = gf(2);
  std::vector<Matrix> out;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << (n * n)); ++code) {
    Matrix a(f, n, n);
    for (std::size_t k = 0; k < n * n; ++k) a(k / n, k % n) = Scalar(f, static_cast<long>((code >> k) & 1));
    out.push_back(a);
  }
  return out;
}

// Similarity by exhaustive search for R with R a = b R.
bool similar_by_search(const Matrix& a, const Matrix& b, const std::vector<Matrix>& group) {
  for (const auto& r : group)
    if (r * a == b * r) return true;
  return false;
}

// Jordan block sizes of a nilpotent matrix from the rank sequence: the
// number of blocks of size >= k is rank(a^{k-1}) - rank(a^k).
std::vector<std::size_t> sizes_from_ranks(const Matrix& a) {
  const std::size_t n = a.rows();
  std::vector<std::size_t> ranks{n};
  for (std::size_t k = 1; k <= n; ++k) ranks.push_back(rank(power(a, k)));
  std::vector<std::size_t> sizes;
  for (std::size_t k = n; k >= 1; --k) {
    const std::size_t at_least_k = ranks[k - 1] - ranks[k];
    const std::size_t at_least_k1 = k < n ? ranks[k] - ranks[k + 1] : 0;
    for (std::size_t i = 0; i < at_least_k - at_least_k1; ++i) sizes.push_back(k);
  }
  return sizes;
}

}  // namespace

TEST_CASE("fitting examples") {
  const auto f2 = gf(2);
  auto fit = fitting_decompose(m(f2, {{0, 1}, {0, 0}}));
  CHECK(fit.conjugator == Matrix::identity(f2, 2));
  CHECK(fit.invertible_block.rows() == 0);
  CHECK(fit.nilpotent_block_sizes == std::vector<std::size_t>{2});

  fit = fitting_decompose(m(Q, {{1, 0, 0}, {0, 0, 1}, {0, 0, 0}}));
  CHECK(fit.conjugator == Matrix::identity(Q, 3));
  CHECK(fit.invertible_block == m(Q, {{1}}));
  CHECK(fit.nilpotent_block_sizes == std::vector<std::size_t>{2});

  fit = fitting_decompose(m(Q, {{1, 1}, {0, 0}}));
  CHECK(fit.conjugator == m(Q, {{1, 1}, {0, -1}}));
  CHECK(fit.invertible_block == m(Q, {{1}}));
  CHECK(fit.nilpotent_block_sizes == std::vector<std::size_t>{1});
  CHECK(fit.canonical_matrix() == m(Q, {{1, 0}, {0, 0}}));

  fit = fitting_decompose(Matrix::identity(Q, 3));
  CHECK(fit.nilpotent_block_sizes.empty());
  CHECK(fit.invertible_block == Matrix::identity(Q, 3));

  fit = fitting_decompose(Matrix(Q, 0, 0));
  CHECK(fit.conjugator.rows() == 0);
}

TEST_CASE("nilpotent jordan examples") {
  CHECK(nilpotent_jordan(Matrix(Q, 2, 2)).sizes == std::vector<std::size_t>{1, 1});
  const auto f2 = gf(2);
  const Matrix ones = m(f2, {{1, 1}, {1, 1}});
  const auto nj = nilpotent_jordan(ones);
  CHECK(nj.sizes == std::vector<std::size_t>{2});
  CHECK(inverse(nj.conjugator) * ones * nj.conjugator == jordan_block(f2, 2));
  const auto j3 = nilpotent_jordan(jordan_block(Q, 3));
  CHECK(j3.conjugator == Matrix::identity(Q, 3));
  CHECK(j3.sizes == std::vector<std::size_t>{3});
  try {
    nilpotent_jordan(m(Q, {{1, 0}, {0, 0}}));
    FAIL("not nilpotent");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotNilpotent);
  }
}

TEST_CASE("rcf examples") {
  CHECK(rcf(Matrix::identity(Q, 2)).invariant_factors ==
        std::vector<MonicPoly>{monic(Q, {-1, 1}), monic(Q, {-1, 1})});
  const Matrix swap = m(Q, {{0, 1}, {1, 0}});
  const auto r = rcf(swap);
  CHECK(r.invariant_factors == std::vector<MonicPoly>{monic(Q, {-1, 0, 1})});
  CHECK(inverse(r.conjugator) * swap * r.conjugator == companion(monic(Q, {-1, 0, 1})));

  // Diag(C(t-2), C(t^2-2t)) has invariant factors [t - 2, t^2 - 2t].
  const Matrix d = block_diag({companion(monic(Q, {-2, 1})), companion(monic(Q, {0, -2, 1}))});
  const auto rd = rcf(d);
  CHECK(rd.invariant_factors == std::vector<MonicPoly>{monic(Q, {-2, 1}), monic(Q, {0, -2, 1})});
  CHECK(inverse(rd.conjugator) * d * rd.conjugator == rd.canonical_matrix());

  // Diag(C(t-2), C(t-3)) is cyclic: one factor (t-2)(t-3).
  const Matrix e = m(Q, {{2, 0}, {0, 3}});
  CHECK(rcf(e).invariant_factors == std::vector<MonicPoly>{monic(Q, {6, -5, 1})});
  CHECK(rcf(e).invariant_factors == rcf(e).invariant_factors);
  CHECK(rcf(e).conjugator == rcf(e).conjugator);
}

TEST_CASE("split_semisimple_zero examples") {
  auto s = split_semisimple_zero(m(Q, {{5, 0}, {0, 0}}));
  CHECK(s.conjugator == Matrix::identity(Q, 2));
  CHECK(s.invertible_part == m(Q, {{5}}));
  s = split_semisimple_zero(m(Q, {{1, 1}, {0, 0}}));
  CHECK(s.conjugator == m(Q, {{1, 1}, {0, -1}}));
  CHECK(s.invertible_part == m(Q, {{1}}));
  try {
    split_semisimple_zero(jordan_block(Q, 2));
    FAIL("J2");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotSemisimpleAtZero);
  }
  CHECK(kernel_image_overlap(jordan_block(Q, 3)) == 1);
  CHECK(zero_is_semisimple(m(Q, {{2, 0}, {0, 0}})));
}

TEST_CASE("invariant_factors_equal examples") {
  const Matrix j2 = jordan_block(Q, 2);
  CHECK(invariant_factors_equal(j2, j2.transpose()));
  CHECK(!invariant_factors_equal(Matrix::identity(Q, 2), m(Q, {{1, 0}, {0, 0}})));
  CHECK_THROWS_AS(invariant_factors_equal(j2, Matrix::identity(Q, 3)), Error);
  CHECK_THROWS_AS(invariant_factors_equal(j2, jordan_block(gf(2), 2)), Error);
}

TEST_CASE("cyclic basis") {
  const Matrix c = companion(monic(Q, {1, 2, 1}));
  const Matrix v = cyclic_basis(c, m(Q, {{1}, {0}}));
  CHECK(inverse(v) * c * v == c);
  CHECK_THROWS_AS(cyclic_basis(Matrix::identity(Q, 2), m(Q, {{1}, {0}})), Error);
}

TEST_CASE("oracle: similarity agrees with exhaustive search over GF(2), n <= 3") {
  for (std::size_t n : {2u, 3u}) {
    const auto all = all_matrices_gf2(n);
    std::vector<Matrix> group;
    for (const auto& a : all)
      if (rank(a) == n) group.push_back(a);
    CHECK(group.size() == (n == 2 ? 6u : 168u));
    // Class representatives by search, then every matrix against each.
    std::vector<Matrix> reps;
    std::vector<std::size_t> class_of(all.size());
    for (std::size_t i = 0; i < all.size(); ++i) {
      std::size_t k = 0;
      while (k < reps.size() && !similar_by_search(reps[k], all[i], group)) ++k;
      if (k == reps.size()) reps.push_back(all[i]);
      class_of[i] = k;
    }
    CHECK(reps.size() == (n == 2 ? 6u : 14u));
    for (std::size_t i = 0; i < all.size(); ++i)
      CHECK(invariant_factors(all[i]) == invariant_factors(reps[class_of[i]]));
    for (std::size_t a = 0; a < reps.size(); ++a)
      for (std::size_t b = a + 1; b < reps.size(); ++b) CHECK(!invariant_factors_equal(reps[a], reps[b]));
  }
}

TEST_CASE("property: replay, accounting and conjugation invariance") {
  std::mt19937 rng(99);
  for (const auto& f : {Q, gf(5), gf(2), gf(3)}) {
    for (int trial = 0; trial < 120; ++trial) {
      const std::size_t n = 1 + rng() % 6;
      Matrix a;
      switch (trial % 4) {
        case 0: a = random_matrix(f, n, n, rng); break;
        case 1: a = random_rank_matrix(f, n, rng() % (n + 1), rng); break;
        case 2: a = random_nilpotent(f, n, rng); break;
        default: {
          // Repeated invariant factors.
          const std::size_t h = std::max<std::size_t>(1, n / 2);
          const Matrix blk = random_matrix(f, h, h, rng);
          a = conjugate(block_diag({blk, blk}), random_invertible(f, 2 * h, rng));
        }
      }
      const std::size_t size = a.rows();
      const Matrix r = random_invertible(f, size, rng);
      const Matrix b = conjugate(a, r);

      const auto fit = fitting_decompose(a);
      CHECK(inverse(fit.conjugator) * a * fit.conjugator == fit.canonical_matrix());
      std::size_t jordan_rank = 0, total = fit.invertible_block.rows();
      for (auto s : fit.nilpotent_block_sizes) {
        jordan_rank += s - 1;
        total += s;
      }
      CHECK(total == size);
      CHECK(rank(a) == fit.invertible_block.rows() + jordan_rank);
      CHECK(fit.nilpotent_block_sizes.size() == size - rank(a));
      CHECK(fitting_decompose(b).nilpotent_block_sizes == fit.nilpotent_block_sizes);

      const auto rc = rcf(a);
      CHECK(inverse(rc.conjugator) * a * rc.conjugator == rc.canonical_matrix());
      std::size_t deg = 0;
      for (std::size_t i = 0; i < rc.invariant_factors.size(); ++i) {
        deg += rc.invariant_factors[i].degree();
        if (i) CHECK(rc.invariant_factors[i - 1].to_poly().divides(rc.invariant_factors[i].to_poly()));
      }
      CHECK(deg == size);
      CHECK(rc.invariant_factors.back() == minimal_polynomial(a));
      CHECK(rcf(b).invariant_factors == rc.invariant_factors);
      CHECK(invariant_factors(a) == rc.invariant_factors);

      // Some invariant factor differs from t - 1 iff dim Ker(a - I) < size.
      bool other = false;
      for (const auto& p : rc.invariant_factors) other = other || !p.is_t_minus_one();
      const std::size_t fixed = size - rank(a - Matrix::identity(f, size));
      CHECK(other == (fixed < size));

      const Matrix nil = random_nilpotent(f, size, rng);
      const auto nj = nilpotent_jordan(nil);
      std::vector<Matrix> blocks;
      for (auto s : nj.sizes) blocks.push_back(jordan_block(f, s));
      CHECK(inverse(nj.conjugator) * nil * nj.conjugator == block_diag(f, blocks));
      CHECK(nj.sizes == sizes_from_ranks(nil));

      if (zero_is_semisimple(a)) {
        const auto s = split_semisimple_zero(a);
        const std::size_t p = rank(a);
        CHECK(s.invertible_part.rows() == p);
        CHECK(rank(s.invertible_part) == p);
        CHECK(inverse(s.conjugator) * a * s.conjugator ==
              block_diag({s.invertible_part, Matrix(f, size - p, size - p)}));
      } else {
        CHECK_THROWS_AS(split_semisimple_zero(a), Error);
      }
    }
  }
}
