#include "simsemi/closure_oracle.hpp"

#include <array>
#include <atomic>
#include <optional>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "simsemi/canonical_forms.hpp"

namespace simsemi {

namespace {

constexpr std::size_t kMaxDim = 4;
using Packed = std::array<std::uint8_t, kMaxDim * kMaxDim>;

std::uint64_t checked_universe(const FieldDescriptor& field, std::size_t n, std::uint64_t cap) {
  if (!field.is_finite()) fail(ErrorCode::FieldNotFinite, "exhaustive checks need a finite field (gf:<p>)");
  if (n > kMaxDim) fail(ErrorCode::TooLarge, "exhaustive checks support n <= 4");
  if (field.modulus() > 255) fail(ErrorCode::TooLarge, "exhaustive checks support moduli below 256");
  std::uint64_t u = 1;
  for (std::size_t k = 0; k < n * n; ++k) {
    if (u > cap / field.modulus())
      fail(ErrorCode::TooLarge, "universe gf:" + std::to_string(field.modulus()) + "^" +
                                    std::to_string(n * n) + " exceeds the cap of " + std::to_string(cap));
    u *= field.modulus();
  }
  return u;
}

// Arithmetic on packed n x n matrices over GF(q), q < 256.
class Codec {
 public:
  Codec(std::uint64_t q, std::size_t n) : q_(static_cast<unsigned>(q)), n_(n) {
    for (unsigned x = 1; x < q_; ++x)
      for (unsigned y = 1; y < q_; ++y)
        if (x * y % q_ == 1) inv_[x] = static_cast<std::uint8_t>(y);
  }

  Packed decode(std::uint64_t key) const {
    Packed m{};
    for (std::size_t k = 0; k < n_ * n_; ++k) {
      m[k] = static_cast<std::uint8_t>(key % q_);
      key /= q_;
    }
    return m;
  }

  std::uint64_t encode(const Packed& m) const {
    std::uint64_t key = 0;
    for (std::size_t k = n_ * n_; k-- > 0;) key = key * q_ + m[k];
    return key;
  }

  Packed mul(const Packed& a, const Packed& b) const {
    Packed c{};
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        unsigned s = 0;
        for (std::size_t k = 0; k < n_; ++k) s += unsigned{a[i * n_ + k]} * b[k * n_ + j];
        c[i * n_ + j] = static_cast<std::uint8_t>(s % q_);
      }
    return c;
  }

  std::size_t rank(Packed m) const {
    std::size_t r = 0;
    for (std::size_t c = 0; c < n_ && r < n_; ++c) {
      std::size_t p = r;
      while (p < n_ && m[p * n_ + c] == 0) ++p;
      if (p == n_) continue;
      for (std::size_t j = 0; j < n_; ++j) std::swap(m[p * n_ + j], m[r * n_ + j]);
      const unsigned inv = inv_[m[r * n_ + c]];
      for (std::size_t i = r + 1; i < n_; ++i) {
        const unsigned f = m[i * n_ + c] * inv % q_;
        if (!f) continue;
        for (std::size_t j = c; j < n_; ++j)
          m[i * n_ + j] = static_cast<std::uint8_t>((m[i * n_ + j] + (q_ - f) * m[r * n_ + j]) % q_);
      }
      ++r;
    }
    return r;
  }

  Packed from_matrix(const Matrix& a) const {
    Packed m{};
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) m[i * n_ + j] = static_cast<std::uint8_t>(a(i, j).residue());
    return m;
  }

  unsigned modulus() const noexcept { return q_; }

 private:
  unsigned q_;
  std::size_t n_;
  std::array<std::uint8_t, 256> inv_{};
};

// Bitset with linearizable test-and-set, shared by BFS workers.
class AtomicBits {
 public:
  explicit AtomicBits(std::uint64_t universe) : words_((universe + 63) / 64) {}

  bool insert(std::uint64_t key) {
    const std::uint64_t mask = std::uint64_t{1} << (key % 64);
    return !(words_[key / 64].fetch_or(mask, std::memory_order_relaxed) & mask);
  }

  void copy_to(MatrixSet& set) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w].load(std::memory_order_relaxed);
      while (bits) {
        const int b = __builtin_ctzll(bits);
        set.insert_key(w * 64 + static_cast<std::uint64_t>(b));
        bits &= bits - 1;
      }
    }
  }

 private:
  std::vector<std::atomic<std::uint64_t>> words_;
};

// Level-synchronous BFS. `expand(key, emit)` calls emit(successor) for each
// successor; the frontier is split evenly across `jobs` workers.
template <class Expand>
void bfs(AtomicBits& seen, std::vector<std::uint64_t> frontier, unsigned jobs, const Expand& expand) {
  jobs = std::max(1u, jobs);
  while (!frontier.empty()) {
    std::vector<std::vector<std::uint64_t>> next(jobs);
    auto work = [&](unsigned worker) {
      for (std::size_t i = worker; i < frontier.size(); i += jobs)
        expand(frontier[i], [&](std::uint64_t succ) {
          if (seen.insert(succ)) next[worker].push_back(succ);
        });
    };
    if (jobs == 1 || frontier.size() < 2 * jobs) {
      for (unsigned w = 0; w < jobs; ++w) work(w);
    } else {
      std::vector<std::thread> threads;
      for (unsigned w = 0; w < jobs; ++w) threads.emplace_back(work, w);
      for (auto& t : threads) t.join();
    }
    frontier.clear();
    for (auto& part : next) frontier.insert(frontier.end(), part.begin(), part.end());
  }
}

std::uint64_t primitive_root(std::uint64_t q) {
  if (q == 2) return 1;
  std::vector<std::uint64_t> primes;
  std::uint64_t m = q - 1;
  for (std::uint64_t f = 2; f * f <= m; ++f)
    if (m % f == 0) {
      primes.push_back(f);
      while (m % f == 0) m /= f;
    }
  if (m > 1) primes.push_back(m);
  auto pow_mod = [q](std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    for (; e; e >>= 1, b = b * b % q)
      if (e & 1) r = r * b % q;
    return r;
  };
  for (std::uint64_t g = 2; g < q; ++g) {
    bool ok = true;
    for (auto f : primes) ok = ok && pow_mod(g, (q - 1) / f) != 1;
    if (ok) return g;
  }
  return 1;
}

struct ClosureRun {
  MatrixSet closure;
  bool escaped;  // some element had rank above the bound
};

ClosureRun closure_run(const MatrixSet& generators, const ClosureOptions& options,
                       std::optional<std::size_t> max_rank) {
  const auto& field = generators.field();
  const std::size_t n = generators.dimension();
  const auto universe = checked_universe(field, n, options.max_universe);
  const Codec codec(field.modulus(), n);
  std::vector<Packed> gens;
  for (auto k : generators.keys()) gens.push_back(codec.decode(k));

  std::atomic<bool> escaped = false;
  AtomicBits seen(universe);
  std::vector<std::uint64_t> frontier;
  for (auto k : generators.keys()) {
    seen.insert(k);
    frontier.push_back(k);
    if (max_rank && codec.rank(codec.decode(k)) > *max_rank) escaped = true;
  }
  bfs(seen, std::move(frontier), options.jobs, [&](std::uint64_t key, auto&& emit) {
    const Packed x = codec.decode(key);
    for (const auto& g : gens) {
      const Packed y = codec.mul(x, g);
      if (max_rank && codec.rank(y) > *max_rank) escaped = true;
      emit(codec.encode(y));
    }
  });
  MatrixSet closure(field, n);
  seen.copy_to(closure);
  return {std::move(closure), escaped.load()};
}

ClosureReport check_class(const Matrix& a, const MatrixSet& klass, const ClosureOptions& options) {
  const auto& field = a.field();
  const std::size_t n = a.rows();
  const std::size_t p = rank(a);
  ClosureReport report{field, n, p, a, invariant_factors(a), klass.size(), 0, 0, false};
  auto run = closure_run(klass, options, p);
  const auto sp = s_p_set(field, n, p, options);
  bool subset = !run.escaped;
  for (auto k : run.closure.keys()) subset = subset && sp.contains_key(k);
  report.closure_size = run.closure.size();
  report.s_p_size = sp.size();
  report.equal = subset && report.closure_size == report.s_p_size;
  return report;
}

void require_singular(const Matrix& a) {
  if (!a.is_square()) fail(ErrorCode::DimensionMismatch, "closure check needs a square matrix");
  if (rank(a) == a.rows()) fail(ErrorCode::NotSingular, "closure check needs a singular matrix");
}

}  // namespace

// ---------------------------------------------------------------------------

MatrixSet::MatrixSet(const FieldDescriptor& field, std::size_t n)
    : field_(field), n_(n), universe_(checked_universe(field, n, ~std::uint64_t{0})),
      bits_((universe_ + 63) / 64, 0) {}

std::uint64_t MatrixSet::key_of(const Matrix& m) const {
  if (!(m.field() == field_) || m.rows() != n_ || m.cols() != n_)
    fail(ErrorCode::DimensionMismatch, "matrix does not belong to this set's universe");
  std::uint64_t key = 0;
  for (std::size_t k = n_ * n_; k-- > 0;) key = key * field_.modulus() + m.entries()[k].residue();
  return key;
}

Matrix MatrixSet::matrix_of(std::uint64_t key) const {
  Matrix m(field_, n_, n_);
  for (std::size_t k = 0; k < n_ * n_; ++k) {
    m(k / n_, k % n_) = Scalar(field_, static_cast<long>(key % field_.modulus()));
    key /= field_.modulus();
  }
  return m;
}

bool MatrixSet::insert_key(std::uint64_t key) {
  if (key >= universe_) fail(ErrorCode::DimensionMismatch, "key outside the universe");
  const std::uint64_t mask = std::uint64_t{1} << (key % 64);
  if (bits_[key / 64] & mask) return false;
  bits_[key / 64] |= mask;
  ++count_;
  return true;
}

bool MatrixSet::contains_key(std::uint64_t key) const {
  return key < universe_ && (bits_[key / 64] >> (key % 64)) & 1;
}

bool MatrixSet::insert(const Matrix& m) { return insert_key(key_of(m)); }
bool MatrixSet::contains(const Matrix& m) const { return contains_key(key_of(m)); }

std::vector<std::uint64_t> MatrixSet::keys() const {
  std::vector<std::uint64_t> out;
  out.reserve(count_);
  for (std::size_t w = 0; w < bits_.size(); ++w) {
    std::uint64_t bits = bits_[w];
    while (bits) {
      out.push_back(w * 64 + static_cast<std::uint64_t>(__builtin_ctzll(bits)));
      bits &= bits - 1;
    }
  }
  return out;
}

std::vector<Matrix> MatrixSet::matrices() const {
  std::vector<Matrix> out;
  for (auto k : keys()) out.push_back(matrix_of(k));
  return out;
}

MatrixSet similarity_class(const Matrix& a, const ClosureOptions& options) {
  if (!a.is_square()) fail(ErrorCode::DimensionMismatch, "similarity_class needs a square matrix");
  const auto& field = a.field();
  const std::size_t n = a.rows();
  const auto universe = checked_universe(field, n, options.max_universe);
  const Codec codec(field.modulus(), n);

  // Conjugation pairs (g, g^{-1}) for a generating set of GL_n.
  std::vector<std::pair<Packed, Packed>> gens;
  const auto q = field.modulus();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      Matrix t = Matrix::identity(field, n);
      t(i, j) = Scalar::one(field);
      gens.emplace_back(codec.from_matrix(t), codec.from_matrix(inverse(t)));
    }
  if (n > 0 && q > 2) {
    Matrix d = Matrix::identity(field, n);
    d(0, 0) = Scalar(field, static_cast<long>(primitive_root(q)));
    gens.emplace_back(codec.from_matrix(d), codec.from_matrix(inverse(d)));
  }

  AtomicBits seen(universe);
  const auto start = codec.encode(codec.from_matrix(a));
  seen.insert(start);
  bfs(seen, {start}, options.jobs, [&](std::uint64_t key, auto&& emit) {
    const Packed x = codec.decode(key);
    for (const auto& [g, g_inv] : gens) emit(codec.encode(codec.mul(codec.mul(g, x), g_inv)));
  });
  MatrixSet out(field, n);
  seen.copy_to(out);
  return out;
}

MatrixSet semigroup_closure(const MatrixSet& generators, const ClosureOptions& options) {
  if (generators.size() == 0) fail(ErrorCode::DimensionMismatch, "semigroup_closure needs generators");
  return closure_run(generators, options, std::nullopt).closure;
}

MatrixSet s_p_set(const FieldDescriptor& field, std::size_t n, std::size_t p, const ClosureOptions& options) {
  const auto universe = checked_universe(field, n, options.max_universe);
  const Codec codec(field.modulus(), n);
  MatrixSet out(field, n);
  for (std::uint64_t key = 0; key < universe; ++key)
    if (codec.rank(codec.decode(key)) <= p) out.insert_key(key);
  return out;
}

ClosureReport theorem_check(const Matrix& a, const ClosureOptions& options) {
  checked_universe(a.field(), a.rows(), options.max_universe);
  require_singular(a);
  return check_class(a, similarity_class(a, options), options);
}

std::vector<ClosureReport> theorem_sweep(const FieldDescriptor& field, std::size_t n,
                                         const ClosureOptions& options) {
  const auto universe = checked_universe(field, n, options.max_universe);
  const Codec codec(field.modulus(), n);
  MatrixSet covered(field, n);
  std::vector<ClosureReport> reports;
  for (std::uint64_t key = 0; key < universe; ++key) {
    if (covered.contains_key(key)) continue;
    if (codec.rank(codec.decode(key)) == n) continue;
    const Matrix a = covered.matrix_of(key);
    const auto klass = similarity_class(a, options);
    for (auto k : klass.keys()) covered.insert_key(k);
    reports.push_back(check_class(a, klass, options));
  }
  return reports;
}

namespace {

std::string factor_list(const std::vector<MonicPoly>& factors) {
  std::string s = "[";
  for (std::size_t i = 0; i < factors.size(); ++i) s += (i ? ", " : "") + factors[i].to_string();
  return s + "]";
}

}  // namespace

std::string format_report(const ClosureReport& r) {
  std::ostringstream os;
  auto line = [&](const char* key, const std::string& value) {
    os << "  " << key << std::string(18 - std::string(key).size(), ' ') << value << '\n';
  };
  line("field", r.field.to_string());
  line("n", std::to_string(r.n));
  line("rank", std::to_string(r.rank));
  line("invariant_factors", factor_list(r.generator_canonical_form));
  line("class_size", std::to_string(r.class_size));
  line("closure_size", std::to_string(r.closure_size));
  line("s_p_size", std::to_string(r.s_p_size));
  line("equal", r.equal ? "yes" : "no");
  return os.str();
}

std::string report_json(const ClosureReport& r) {
  nlohmann::json j;
  j["field"] = r.field.to_string();
  j["n"] = r.n;
  j["rank"] = r.rank;
  j["generator"] = r.generator.to_string();
  std::vector<std::string> factors;
  for (const auto& f : r.generator_canonical_form) factors.push_back(f.to_string());
  j["invariant_factors"] = factors;
  j["class_size"] = r.class_size;
  j["closure_size"] = r.closure_size;
  j["s_p_size"] = r.s_p_size;
  j["equal"] = r.equal;
  return j.dump();
}

}  // namespace simsemi
