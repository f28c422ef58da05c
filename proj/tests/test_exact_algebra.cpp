#include <doctest.h>

#include "simsemi/matrix.hpp"
#include "test_support.hpp"

using namespace simsemi;
using namespace simsemi::testing;

namespace {

Matrix m(const FieldDescriptor& f, std::initializer_list<std::initializer_list<long>> rows) {
  return Matrix::from_rows(f, rows);
}

Matrix rat(std::size_t rows, std::size_t cols, std::initializer_list<const char*> entries) {
  std::vector<Scalar> v;
  for (auto e : entries) v.push_back(Scalar::parse(Q, e));
  return Matrix(Q, rows, cols, v);
}

// Number of vectors x in GF(p)^n with a x = 0, by enumeration.
std::uint64_t brute_kernel_size(const Matrix& a) {
  const auto p = a.field().modulus();
  std::uint64_t total = 1, count = 0;
  for (std::size_t i = 0; i < a.cols(); ++i) total *= p;
  for (std::uint64_t code = 0; code < total; ++code) {
    Matrix x(a.field(), a.cols(), 1);
    auto c = code;
    for (std::size_t i = 0; i < a.cols(); ++i, c /= p) x(i, 0) = Scalar(a.field(), static_cast<long>(c % p));
    if ((a * x).is_zero()) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("field descriptors parse and validate") {
  CHECK(FieldDescriptor::parse("rational") == Q);
  CHECK(FieldDescriptor::parse("Q") == Q);
  CHECK(FieldDescriptor::parse("gf:7").modulus() == 7);
  CHECK(FieldDescriptor::parse("gf:7").to_string() == "gf:7");
  CHECK(Q.to_string() == "rational");
  for (const char* bad : {"gf:1", "gf:4", "gf:0", "gf:4294967311"}) {
    try {
      FieldDescriptor::parse(bad);
      FAIL("accepted " << bad);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidField);
    }
  }
  for (const char* bad : {"gf:", "gf:x", "gf:7 ", "real", ""}) {
    try {
      FieldDescriptor::parse(bad);
      FAIL("accepted " << bad);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Parse);
    }
  }
  CHECK(FieldDescriptor::prime(4294967291ULL).modulus() == 4294967291ULL);
}

TEST_CASE("primality agrees with trial division") {
  for (std::uint64_t n = 0; n < 2000; ++n) {
    bool prime = n >= 2;
    for (std::uint64_t d = 2; d * d <= n; ++d) prime = prime && n % d != 0;
    CHECK_MESSAGE(is_prime(n) == prime, n);
  }
}

TEST_CASE("rational scalars stay in lowest terms") {
  const Scalar a = Scalar::parse(Q, "-6/4");
  CHECK(a.to_string() == "-3/2");
  CHECK((a + Scalar::parse(Q, "3/2")).is_zero());
  CHECK((a * a.inverse()).is_one());
  CHECK(Scalar::parse(Q, "4/2").to_string() == "2");
  CHECK(Scalar::parse(Q, "0/5").is_zero());
  CHECK_THROWS_AS(Scalar::parse(Q, "1/0"), Error);
  CHECK_THROWS_AS(Scalar::parse(Q, "1/-2"), Error);
  CHECK_THROWS_AS(Scalar::parse(Q, "x"), Error);
  CHECK_THROWS_AS(Scalar::zero(Q).inverse(), Error);
}

TEST_CASE("prime field residues are canonical") {
  const auto f = gf(7);
  CHECK(Scalar::parse(f, "6").residue() == 6);
  CHECK_THROWS_AS(Scalar::parse(f, "7"), Error);
  CHECK_THROWS_AS(Scalar::parse(f, "-1"), Error);
  CHECK(Scalar(f, -1).residue() == 6);
  CHECK(Scalar(f, mpq_class(1, 2)).residue() == 4);
  for (long x = 1; x < 7; ++x) {
    // Inverse against a brute-force search.
    long inv = 1;
    while (x * inv % 7 != 1) ++inv;
    CHECK(Scalar(f, x).inverse().residue() == static_cast<std::uint64_t>(inv));
  }
  try {
    Scalar(f, 1) + Scalar(gf(5), 1);
    FAIL("mixed fields");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::FieldMismatch);
  }
}

TEST_CASE("large prime residue products do not overflow") {
  const auto f = FieldDescriptor::prime(4294967291ULL);
  const Scalar a(f, 4294967290L);  // -1
  CHECK((a * a).is_one());
}

TEST_CASE("mat_mul examples") {
  CHECK(Matrix::identity(Q, 2) * Matrix::identity(Q, 2) == Matrix::identity(Q, 2));
  CHECK(m(gf(2), {{0, 1}, {0, 0}}) * m(gf(2), {{0, 0}, {1, 0}}) == m(gf(2), {{1, 0}, {0, 0}}));
  CHECK(rat(2, 2, {"1/2", "0", "0", "2"}) * rat(2, 2, {"2", "0", "0", "1/2"}) == Matrix::identity(Q, 2));
  try {
    Matrix(Q, 2, 3) * Matrix(Q, 2, 3);
    FAIL("shape");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimensionMismatch);
  }
  try {
    Matrix(Q, 2, 2) * Matrix(gf(3), 2, 2);
    FAIL("field");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::FieldMismatch);
  }
}

TEST_CASE("rank examples") {
  CHECK(rank(Matrix(Q, 3, 3)) == 0);
  CHECK(rank(m(gf(2), {{1, 1}, {1, 1}})) == 1);
  CHECK(rank(m(Q, {{0, 1, 0}, {0, 0, 1}, {0, 0, 0}})) == 2);
  CHECK(rank(m(Q, {{1, 2}, {2, 4}})) == 1);
  CHECK(rank(m(gf(3), {{1, 2}, {2, 1}})) == 1);
}

TEST_CASE("inverse examples and errors") {
  CHECK(inverse(Matrix::identity(Q, 3)) == Matrix::identity(Q, 3));
  CHECK(inverse(m(Q, {{0, 1}, {1, 0}})) == m(Q, {{0, 1}, {1, 0}}));
  CHECK(inverse(m(Q, {{2, 0}, {0, 1}})) == rat(2, 2, {"1/2", "0", "0", "1"}));
  try {
    inverse(m(Q, {{1, 2}, {2, 4}}));
    FAIL("singular");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularMatrix);
  }
  CHECK_THROWS_AS(inverse(Matrix(Q, 2, 3)), Error);
  CHECK(inverse(Matrix(Q, 0, 0)) == Matrix(Q, 0, 0));
}

TEST_CASE("kernel and image examples") {
  auto ki = kernel_and_image(Matrix::identity(Q, 2));
  CHECK(ki.kernel.cols() == 0);
  CHECK(ki.image == Matrix::identity(Q, 2));
  ki = kernel_and_image(m(Q, {{0, 1}, {0, 0}}));
  CHECK(ki.kernel == m(Q, {{1}, {0}}));
  CHECK(ki.image == m(Q, {{1}, {0}}));
  ki = kernel_and_image(Matrix(Q, 2, 2));
  CHECK(ki.kernel == Matrix::identity(Q, 2));
  CHECK(ki.image.cols() == 0);
  // Leading entries normalized to 1.
  ki = kernel_and_image(m(Q, {{2, 4}, {1, 2}}));
  CHECK(ki.kernel == rat(2, 1, {"1", "-1/2"}));
  CHECK(ki.image == rat(2, 1, {"1", "1/2"}));
}

TEST_CASE("block_diag, reversal and conjugate examples") {
  CHECK(block_diag({m(Q, {{1}}), m(Q, {{0}})}) == m(Q, {{1, 0}, {0, 0}}));
  const Matrix j2 = m(Q, {{0, 1}, {0, 0}});
  CHECK(block_diag({Matrix(Q, 0, 0), j2}) == j2);
  CHECK(block_diag({m(Q, {{2}}), j2}) == m(Q, {{2, 0, 0}, {0, 0, 1}, {0, 0, 0}}));
  CHECK_THROWS_AS(block_diag({m(Q, {{2}}), m(gf(2), {{1}})}), Error);
  CHECK(reversal_matrix(Q, 2) == m(Q, {{0, 1}, {1, 0}}));
  CHECK(reversal_matrix(Q, 1) == m(Q, {{1}}));
  CHECK(reversal_matrix(Q, 3) == m(Q, {{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}));
  for (std::size_t d = 1; d < 7; ++d) CHECK(reversal_matrix(Q, d) * reversal_matrix(Q, d) == Matrix::identity(Q, d));
  CHECK(conjugate(j2, reversal_matrix(Q, 2)) == j2.transpose());
  CHECK(conjugate(j2, Matrix::identity(Q, 2)) == j2);
  CHECK(conjugate(m(Q, {{1, 0}, {0, 0}}), m(Q, {{1, 1}, {0, 1}})) == m(Q, {{1, -1}, {0, 0}}));
  CHECK_THROWS_AS(conjugate(j2, m(Q, {{1, 1}, {1, 1}})), Error);
}

TEST_CASE("size-0 matrices are ordinary values") {
  const Matrix z(Q, 0, 0);
  CHECK(z * z == z);
  CHECK(rank(z) == 0);
  CHECK(Matrix(Q, 3, 0) * Matrix(Q, 0, 2) == Matrix(Q, 3, 2));
  CHECK(Matrix::parse(Q, "3 0\n") == Matrix(Q, 3, 0));
  CHECK(Matrix::parse(Q, Matrix(Q, 3, 0).to_string()) == Matrix(Q, 3, 0));
  CHECK(kernel_and_image(Matrix(Q, 0, 3)).kernel == Matrix::identity(Q, 3));
}

TEST_CASE("matrix text format") {
  const Matrix a = Matrix::parse(Q, "2 3\n1 -2 3/4\n0 0 -1/3\n");
  CHECK(a == rat(2, 3, {"1", "-2", "3/4", "0", "0", "-1/3"}));
  CHECK(Matrix::parse(Q, a.to_string()) == a);
  CHECK(Matrix::parse(gf(5), "2 2\n4 0\n1 3") == m(gf(5), {{4, 0}, {1, 3}}));
  for (const char* bad : {"", "2", "2 2\n1 2\n3", "2 2\n1 2\n3 4\n5", "1 1\nx", "-1 2\n", "1 1\n1/0"}) {
    try {
      Matrix::parse(Q, bad);
      FAIL("accepted: " << bad);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Parse);
    }
  }
  try {
    Matrix::parse(gf(5), "1 1\n5\n");
    FAIL("non-canonical residue");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Parse);
  }
  try {
    Matrix::read_file(Q, "/nonexistent/matrix.txt");
    FAIL("missing file");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Io);
  }
}

TEST_CASE("solve and extend_to_basis") {
  const Matrix a = m(Q, {{1, 2}, {2, 4}});
  const Matrix x = solve(a, m(Q, {{3}, {6}}));
  CHECK(a * x == m(Q, {{3}, {6}}));
  CHECK_THROWS_AS(solve(a, m(Q, {{1}, {0}})), Error);
  const Matrix basis = extend_to_basis(m(Q, {{1}, {1}, {0}}));
  CHECK(basis == m(Q, {{1, 1, 0}, {1, 0, 0}, {0, 0, 1}}));
}

TEST_CASE("property: rank-nullity, submultiplicativity, inverses, rank oracle") {
  std::mt19937 rng(11);
  for (const auto& f : {Q, gf(5), gf(2)}) {
    for (int trial = 0; trial < 150; ++trial) {
      const std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5, k = 1 + rng() % 5;
      const Matrix a = random_rank_matrix(f, std::max(r, c), rng() % (std::min(r, c) + 1), rng).block(0, 0, r, c);
      const Matrix b = random_matrix(f, c, k, rng);
      const auto ki = kernel_and_image(a);
      CHECK(rank(a) + ki.kernel.cols() == a.cols());
      CHECK(ki.image.cols() == rank(a));
      CHECK((a * ki.kernel).is_zero());
      CHECK(rank(Matrix::hconcat(f, r, std::vector<Matrix>{ki.image, a})) == rank(a));
      CHECK(rank(a * b) <= std::min(rank(a), rank(b)));
      const auto e = rref(a);
      CHECK(e.pivot_cols.size() == rank(a));
      if (f == gf(2) && c <= 5) CHECK(brute_kernel_size(a) == (std::uint64_t{1} << (c - rank(a))));
      const Matrix sq = random_invertible(f, r, rng);
      const Matrix inv = inverse(sq);
      CHECK(sq * inv == Matrix::identity(f, r));
      CHECK(inv * sq == Matrix::identity(f, r));
      CHECK(rank(conjugate(a.block(0, 0, std::min(r, c), std::min(r, c)), random_invertible(f, std::min(r, c), rng))) ==
            rank(a.block(0, 0, std::min(r, c), std::min(r, c))));
    }
  }
}
