#include <doctest.h>

#include <set>

#include "simsemi/closure_oracle.hpp"
#include "test_support.hpp"

using namespace simsemi;
using namespace simsemi::testing;

namespace {

Matrix m(const FieldDescriptor& f, std::initializer_list<std::initializer_list<long>> rows) {
  return Matrix::from_rows(f, rows);
}

std::vector<Matrix> all_matrices(const FieldDescriptor& f, std::size_t n) {
  const auto q = f.modulus();
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < n * n; ++k) total *= q;
  std::vector<Matrix> out;
  for (std::uint64_t code = 0; code < total; ++code) {
    Matrix a(f, n, n);
    auto c = code;
    for (std::size_t k = 0; k < n * n; ++k, c /= q) a(k / n, k % n) = Scalar(f, static_cast<long>(c % q));
    out.push_back(a);
  }
  return out;
}

using Naive = std::set<std::string>;

Naive naive_class(const Matrix& a, const std::vector<Matrix>& all) {
  Naive out;
  for (const auto& r : all)
    if (rank(r) == a.rows()) out.insert(conjugate(a, r).to_string());
  return out;
}

// Fixpoint of pairwise products, on std::set of text forms.
Naive naive_closure(const FieldDescriptor& f, const Naive& gens) {
  Naive out = gens;
  std::vector<Matrix> gm;
  for (const auto& g : gens) gm.push_back(Matrix::parse(f, g));
  std::vector<std::string> frontier(gens.begin(), gens.end());
  while (!frontier.empty()) {
    std::vector<std::string> next;
    for (const auto& x : frontier) {
      const Matrix xm = Matrix::parse(f, x);
      for (const auto& g : gm) {
        auto s = (xm * g).to_string();
        if (out.insert(s).second) next.push_back(s);
      }
    }
    frontier = std::move(next);
  }
  return out;
}

Naive as_naive(const MatrixSet& s) {
  Naive out;
  for (const auto& x : s.matrices()) out.insert(x.to_string());
  return out;
}

}  // namespace

TEST_CASE("similarity_class examples") {
  const auto f2 = gf(2);
  const auto j2 = similarity_class(jordan_block(f2, 2));
  CHECK(j2.size() == 3);
  CHECK(j2.contains(m(f2, {{0, 1}, {0, 0}})));
  CHECK(j2.contains(m(f2, {{0, 0}, {1, 0}})));
  CHECK(j2.contains(m(f2, {{1, 1}, {1, 1}})));
  CHECK(similarity_class(Matrix(f2, 2, 2)).size() == 1);
  // All rank-1 idempotents: 3 image lines times 2 complementary kernels.
  const auto e = similarity_class(m(f2, {{1, 0}, {0, 0}}));
  CHECK(e.size() == 6);
  for (const auto& x : e.matrices()) {
    CHECK(is_idempotent(x));
    CHECK(rank(x) == 1);
  }
}

TEST_CASE("semigroup_closure and s_p_set examples") {
  const auto f2 = gf(2);
  MatrixSet id(f2, 2);
  id.insert(Matrix::identity(f2, 2));
  CHECK(semigroup_closure(id).size() == 1);
  MatrixSet e(f2, 2);
  e.insert(m(f2, {{1, 0}, {0, 0}}));
  CHECK(semigroup_closure(e).size() == 1);
  CHECK(semigroup_closure(similarity_class(jordan_block(f2, 2))).size() == 10);
  CHECK(s_p_set(f2, 2, 1).size() == 10);
  CHECK(s_p_set(f2, 3, 2).size() == 344);
  CHECK(s_p_set(gf(3), 2, 2).size() == 81);
  CHECK_THROWS_AS(semigroup_closure(MatrixSet(f2, 2)), Error);
}

TEST_CASE("theorem_check examples and errors") {
  const auto f2 = gf(2);
  auto r = theorem_check(jordan_block(f2, 2));
  CHECK(r.equal);
  CHECK(r.closure_size == 10);
  CHECK(r.s_p_size == 10);
  CHECK(r.class_size == 3);
  r = theorem_check(block_diag({jordan_block(f2, 2), Matrix(f2, 1, 1)}));
  CHECK(r.equal);
  CHECK(r.closure_size == 50);
  const auto text = format_report(r);
  CHECK(text.find("closure_size      50") != std::string::npos);
  CHECK(text.find("equal             yes") != std::string::npos);
  const auto json = report_json(r);
  CHECK(json.find("\"closure_size\":50") != std::string::npos);

  auto expect = [](auto&& fn, ErrorCode code) {
    try {
      fn();
      FAIL("no error");
    } catch (const Error& e) {
      CHECK(e.code() == code);
    }
  };
  expect([] { theorem_check(jordan_block(Q, 2)); }, ErrorCode::FieldNotFinite);
  expect([&] { theorem_check(Matrix::identity(f2, 2)); }, ErrorCode::NotSingular);
  expect([] { theorem_check(Matrix(gf(2), 5, 5)); }, ErrorCode::TooLarge);
  expect([] { theorem_check(Matrix(gf(257), 2, 2)); }, ErrorCode::TooLarge);
  expect([] { theorem_check(Matrix(gf(3), 4, 4), ClosureOptions{1, 1000}); }, ErrorCode::TooLarge);
}

TEST_CASE("oracle: naive set-based class and closure over GF(2) n=2,3 and GF(3) n=2") {
  for (const auto& [f, n] : {std::pair{gf(2), std::size_t{2}}, std::pair{gf(3), std::size_t{2}},
                             std::pair{gf(2), std::size_t{3}}}) {
    const auto all = all_matrices(f, n);
    std::set<std::string> done;
    for (const auto& a : all) {
      if (rank(a) == n || done.count(a.to_string())) continue;
      const Naive klass = naive_class(a, all);
      done.insert(klass.begin(), klass.end());
      const auto fast = similarity_class(a);
      CHECK(as_naive(fast) == klass);
      const Naive closure = naive_closure(f, klass);
      CHECK(as_naive(semigroup_closure(fast)) == closure);
      Naive sp;
      for (const auto& x : all)
        if (rank(x) <= rank(a)) sp.insert(x.to_string());
      CHECK(closure == sp);
    }
  }
}

TEST_CASE("sweeps: class coverage and sizes") {
  const auto reports = theorem_sweep(gf(2), 2);
  REQUIRE(reports.size() == 3);
  std::set<std::size_t> sizes;
  std::size_t covered = 0;
  for (const auto& r : reports) {
    CHECK(r.equal);
    sizes.insert(r.closure_size);
    covered += r.class_size;
  }
  CHECK(sizes == std::set<std::size_t>{1, 10});
  CHECK(covered == 16 - 6);
  for (const auto& r : theorem_sweep(gf(3), 2)) CHECK(r.equal);
}

TEST_CASE("parallel BFS agrees with the sequential one") {
  const auto f3 = gf(3);
  const Matrix a = m(f3, {{0, 1, 0}, {0, 0, 0}, {0, 0, 2}});
  const auto seq = similarity_class(a, ClosureOptions{1});
  const auto par = similarity_class(a, ClosureOptions{4});
  CHECK(seq.keys() == par.keys());
  const auto c1 = semigroup_closure(seq, ClosureOptions{1});
  const auto c4 = semigroup_closure(seq, ClosureOptions{4});
  CHECK(c1.keys() == c4.keys());
  const auto r = theorem_check(a, ClosureOptions{4});
  CHECK(r.equal);
  CHECK(r.closure_size == s_p_set(f3, 3, 2).size());
}

TEST_CASE("closure is conjugation invariant as a set") {
  const auto f3 = gf(3);
  const auto closure = semigroup_closure(similarity_class(m(f3, {{1, 0}, {0, 0}})));
  std::mt19937 rng(1);
  for (int i = 0; i < 10; ++i) {
    const Matrix r = random_invertible(f3, 2, rng);
    for (const auto& x : closure.matrices()) CHECK(closure.contains(conjugate(x, r)));
  }
}

TEST_CASE("n = 4 over GF(2)") {
  const auto f2 = gf(2);
  const Matrix a = block_diag({jordan_block(f2, 3), Matrix(f2, 1, 1)});
  const auto r = theorem_check(a, ClosureOptions{2});
  CHECK(r.equal);
  CHECK(r.s_p_size == s_p_set(f2, 4, 2).size());
}

TEST_CASE("matrix set keys") {
  const auto f3 = gf(3);
  MatrixSet s(f3, 2);
  const Matrix a = m(f3, {{1, 2}, {0, 1}});
  CHECK(s.key_of(a) == 1 + 2 * 3 + 0 * 9 + 1 * 27);
  CHECK(s.matrix_of(s.key_of(a)) == a);
  CHECK(s.insert(a));
  CHECK(!s.insert(a));
  CHECK(s.contains(a));
  CHECK(s.universe() == 81);
  CHECK_THROWS_AS(s.insert_key(81), Error);
  CHECK_THROWS_AS(s.key_of(Matrix(f3, 3, 3)), Error);
}
