#include "simsemi/certificate.hpp"

#include <fstream>
#include <sstream>

#include "simsemi/canonical_forms.hpp"

namespace simsemi {

VerificationReport verify(const SimilarityCertificate& c) {
  VerificationReport report;
  report.factor_count = c.conjugators.size();
  auto reject = [&](std::string reason, std::optional<std::size_t> index = std::nullopt) {
    report.valid = false;
    report.failing_index = index;
    report.failure_reason = std::move(reason);
    return report;
  };

  const std::size_t n = c.base.rows();
  if (!(c.base.field() == c.field) || !(c.target.field() == c.field))
    return reject("base or target is not over the declared field");
  if (!c.base.is_square() || !c.target.is_square() || c.target.rows() != n)
    return reject("base and target must be square of equal size");
  if (c.conjugators.empty()) return reject("certificate has no factors");

  try {
    const auto base_factors = invariant_factors(c.base);
    std::optional<Matrix> product;
    for (std::size_t i = 0; i < c.conjugators.size(); ++i) {
      const Matrix& r = c.conjugators[i];
      if (!(r.field() == c.field) || !r.is_square() || r.rows() != n)
        return reject("conjugator " + std::to_string(i) + " has the wrong shape or field", i);
      if (rank(r) < n) return reject("conjugator " + std::to_string(i) + " is singular", i);
      const Matrix factor = r * c.base * inverse(r);
      if (invariant_factors(factor) != base_factors)
        return reject("factor " + std::to_string(i) + " is not similar to the base", i);
      product = product ? *product * factor : factor;
    }
    if (!(*product == c.target)) return reject("product of the factors differs from the target");
  } catch (const Error& e) {
    return reject(std::string("verification error: ") + e.what());
  }
  report.valid = true;
  return report;
}

SimilarityCertificate conjugate_certificate(const SimilarityCertificate& c, const Matrix& u) {
  if (!u.is_square() || u.rows() != c.size())
    fail(ErrorCode::DimensionMismatch, "conjugating matrix has the wrong size");
  const Matrix u_inv = inverse(u);
  SimilarityCertificate out{c.field, c.base, {}, u * c.target * u_inv};
  out.conjugators.reserve(c.conjugators.size());
  for (const auto& r : c.conjugators) out.conjugators.push_back(u * r);
  return out;
}

SimilarityCertificate concat(std::span<const SimilarityCertificate> cs) {
  if (cs.empty()) fail(ErrorCode::CertificateMismatch, "concat of no certificates");
  SimilarityCertificate out{cs[0].field, cs[0].base, {}, cs[0].target};
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const auto& c = cs[i];
    if (!(c.field == out.field) || c.size() != out.size())
      fail(ErrorCode::DimensionMismatch, "concat: certificates differ in field or size");
    if (!(c.base == out.base)) fail(ErrorCode::CertificateMismatch, "concat: certificates differ in base");
    out.conjugators.insert(out.conjugators.end(), c.conjugators.begin(), c.conjugators.end());
    if (i > 0) out.target = out.target * c.target;
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

constexpr std::string_view kMagic = "simsemi-certificate 1";

class LineReader {
 public:
  explicit LineReader(std::string_view text) : in_(std::string(text)) {}

  // Next non-blank line with trailing whitespace stripped.
  std::optional<std::string> next() {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      auto end = line.find_last_not_of(" \t\r");
      if (end == std::string::npos) continue;
      line.resize(end + 1);
      return line;
    }
    return std::nullopt;
  }

  std::string expect(const char* what) {
    auto line = next();
    if (!line) fail(ErrorCode::Parse, std::string("certificate: unexpected end, expected ") + what);
    return *line;
  }

  std::string value_of(const std::string& key) {
    auto line = expect(key.c_str());
    if (line.rfind(key + " ", 0) != 0)
      fail(ErrorCode::Parse, "certificate line " + std::to_string(line_no_) + ": expected '" + key + " ...'");
    return line.substr(key.size() + 1);
  }

  Matrix matrix(const FieldDescriptor& field, std::string header) {
    std::istringstream hs(header);
    long long rows = -1, cols = -1;
    if (!(hs >> rows >> cols) || rows < 0 || cols < 0)
      fail(ErrorCode::Parse, "certificate line " + std::to_string(line_no_) + ": bad matrix header");
    std::string text = header + "\n";
    for (long long i = 0; cols > 0 && i < rows; ++i) text += expect("matrix row") + "\n";
    return Matrix::parse(field, text);
  }

  std::size_t line_no() const noexcept { return line_no_; }

 private:
  std::istringstream in_;
  std::size_t line_no_ = 0;
};

std::size_t parse_count(const std::string& text, const char* what) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != text.size() || text.empty() || text[0] == '-')
    fail(ErrorCode::Parse, std::string("certificate: bad ") + what + " '" + text + "'");
  return static_cast<std::size_t>(v);
}

}  // namespace

std::string serialize(const SimilarityCertificate& c) {
  std::ostringstream os;
  os << kMagic << '\n';
  os << "field " << c.field.to_string() << '\n';
  os << "n " << c.size() << '\n';
  os << "factor_count " << c.conjugators.size() << '\n';
  os << "base\n" << c.base;
  os << "target\n" << c.target;
  os << "conjugators\n";
  for (const auto& r : c.conjugators) os << r;
  os << "end\n";
  return os.str();
}

SimilarityCertificate parse_certificate(std::string_view text) {
  LineReader in(text);
  if (in.expect("header") != kMagic) fail(ErrorCode::Parse, "certificate: missing 'simsemi-certificate 1' header");
  const auto field = [&] {
    try {
      return FieldDescriptor::parse(in.value_of("field"));
    } catch (const Error& e) {
      fail(ErrorCode::Parse, std::string("certificate field: ") + e.what());
    }
  }();
  const std::size_t n = parse_count(in.value_of("n"), "size");
  const std::size_t count = parse_count(in.value_of("factor_count"), "factor count");

  auto section = [&](const char* name) {
    if (in.expect(name) != name) fail(ErrorCode::Parse, std::string("certificate: expected '") + name + "'");
  };
  auto square = [&](Matrix m, const std::string& what) {
    if (m.rows() != n || m.cols() != n)
      fail(ErrorCode::Parse, "certificate: " + what + " is not " + std::to_string(n) + "x" + std::to_string(n));
    return m;
  };

  section("base");
  Matrix base = square(in.matrix(field, in.expect("base matrix")), "base");
  section("target");
  Matrix target = square(in.matrix(field, in.expect("target matrix")), "target");
  section("conjugators");
  std::vector<Matrix> conjugators;
  for (;;) {
    auto line = in.expect("conjugator or 'end'");
    if (line == "end") break;
    conjugators.push_back(square(in.matrix(field, line), "conjugator " + std::to_string(conjugators.size())));
  }
  if (in.next()) fail(ErrorCode::Parse, "certificate: trailing content after 'end'");
  if (conjugators.size() != count)
    fail(ErrorCode::Parse, "certificate: factor_count " + std::to_string(count) + " but " +
                               std::to_string(conjugators.size()) + " conjugators");
  if (conjugators.empty()) fail(ErrorCode::Parse, "certificate: at least one conjugator is required");
  return {field, std::move(base), std::move(conjugators), std::move(target)};
}

SimilarityCertificate read_certificate(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_certificate(buf.str());
}

void write_certificate(const SimilarityCertificate& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::Io, "cannot write '" + path + "'");
  out << serialize(c);
  if (!out) fail(ErrorCode::Io, "write to '" + path + "' failed");
}

}  // namespace simsemi
