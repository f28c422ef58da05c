#include "simsemi/simsemi.h"

#include <cstring>
#include <memory>
#include <sstream>

#include "simsemi/canonical_forms.hpp"
#include "simsemi/certificate.hpp"
#include "simsemi/closure_oracle.hpp"
#include "simsemi/theorem_engine.hpp"

struct simsemi_field {
  simsemi::FieldDescriptor value;
};
struct simsemi_matrix {
  simsemi::Matrix value;
};
struct simsemi_certificate {
  simsemi::SimilarityCertificate value;
};
struct simsemi_trace {
  simsemi::StepTrace value;
};
struct simsemi_closure_report {
  simsemi::ClosureReport value;
};
struct simsemi_sweep {
  std::vector<simsemi_closure_report> reports;
};

namespace {

thread_local std::string last_error;

simsemi_status status_of(simsemi::ErrorCode code) {
  using simsemi::ErrorCode;
  switch (code) {
    case ErrorCode::Parse: return SIMSEMI_ERR_PARSE;
    case ErrorCode::DimensionMismatch: return SIMSEMI_ERR_DIMENSION_MISMATCH;
    case ErrorCode::FieldMismatch: return SIMSEMI_ERR_FIELD_MISMATCH;
    case ErrorCode::InvalidField: return SIMSEMI_ERR_INVALID_FIELD;
    case ErrorCode::SingularMatrix: return SIMSEMI_ERR_SINGULAR_MATRIX;
    case ErrorCode::NotNilpotent: return SIMSEMI_ERR_NOT_NILPOTENT;
    case ErrorCode::NotSemisimpleAtZero: return SIMSEMI_ERR_NOT_SEMISIMPLE_AT_ZERO;
    case ErrorCode::NotIdempotent: return SIMSEMI_ERR_NOT_IDEMPOTENT;
    case ErrorCode::RankMismatch: return SIMSEMI_ERR_RANK_MISMATCH;
    case ErrorCode::InvalidRank: return SIMSEMI_ERR_INVALID_RANK;
    case ErrorCode::RankTooHigh: return SIMSEMI_ERR_RANK_TOO_HIGH;
    case ErrorCode::NotSingular: return SIMSEMI_ERR_NOT_SINGULAR;
    case ErrorCode::FieldNotFinite: return SIMSEMI_ERR_FIELD_NOT_FINITE;
    case ErrorCode::TooLarge: return SIMSEMI_ERR_TOO_LARGE;
    case ErrorCode::DegreeZero: return SIMSEMI_ERR_DEGREE_ZERO;
    case ErrorCode::CertificateMismatch: return SIMSEMI_ERR_CERTIFICATE_MISMATCH;
    case ErrorCode::Io: return SIMSEMI_ERR_IO;
    case ErrorCode::Internal: return SIMSEMI_ERR_INTERNAL;
  }
  return SIMSEMI_ERR_INTERNAL;
}

// Runs `body`, translating exceptions into a status and the thread's
// last-error message.
template <class Body>
simsemi_status guarded(Body&& body) {
  try {
    body();
    return SIMSEMI_OK;
  } catch (const simsemi::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return SIMSEMI_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return SIMSEMI_ERR_INTERNAL;
  }
}

simsemi_status null_argument(const char* what) {
  last_error = std::string("null argument: ") + what;
  return SIMSEMI_ERR_INVALID_ARGUMENT;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

simsemi::ClosureOptions closure_options(const simsemi_closure_options* options) {
  simsemi::ClosureOptions out;
  if (options) {
    out.jobs = options->jobs ? options->jobs : 1;
    out.max_universe = options->max_universe;
  }
  return out;
}

std::string factor_list(const std::vector<simsemi::MonicPoly>& factors) {
  std::string s = "[";
  for (std::size_t i = 0; i < factors.size(); ++i) s += (i ? ", " : "") + factors[i].to_string();
  return s + "]";
}

std::string canon_text(const simsemi::Matrix& m) {
  using namespace simsemi;
  if (!m.is_square()) fail(ErrorCode::DimensionMismatch, "canonical forms need a square matrix");
  const auto fit = fitting_decompose(m);
  std::ostringstream os;
  std::string sizes;
  for (std::size_t i = 0; i < fit.nilpotent_block_sizes.size(); ++i)
    sizes += (i ? ", " : "") + std::to_string(fit.nilpotent_block_sizes[i]);
  os << "size               " << m.rows() << '\n';
  os << "rank               " << rank(m) << '\n';
  os << "invariant_factors  " << factor_list(invariant_factors(m)) << '\n';
  os << "fitting_blocks     invertible " << fit.invertible_block.rows() << ", nilpotent [" << sizes << "]\n";
  os << "zero_semisimple    " << (zero_is_semisimple(m) ? "yes" : "no") << '\n';
  return os.str();
}

}  // namespace

extern "C" {

const char* simsemi_last_error(void) { return last_error.c_str(); }

const char* simsemi_status_name(simsemi_status status) {
  switch (status) {
    case SIMSEMI_OK: return "OK";
    case SIMSEMI_ERR_PARSE: return "Parse";
    case SIMSEMI_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case SIMSEMI_ERR_DIMENSION_MISMATCH: return "DimensionMismatch";
    case SIMSEMI_ERR_FIELD_MISMATCH: return "FieldMismatch";
    case SIMSEMI_ERR_INVALID_FIELD: return "InvalidField";
    case SIMSEMI_ERR_SINGULAR_MATRIX: return "SingularMatrix";
    case SIMSEMI_ERR_NOT_NILPOTENT: return "NotNilpotent";
    case SIMSEMI_ERR_NOT_SEMISIMPLE_AT_ZERO: return "NotSemisimpleAtZero";
    case SIMSEMI_ERR_NOT_IDEMPOTENT: return "NotIdempotent";
    case SIMSEMI_ERR_RANK_MISMATCH: return "RankMismatch";
    case SIMSEMI_ERR_INVALID_RANK: return "InvalidRank";
    case SIMSEMI_ERR_RANK_TOO_HIGH: return "RankTooHigh";
    case SIMSEMI_ERR_NOT_SINGULAR: return "NotSingular";
    case SIMSEMI_ERR_FIELD_NOT_FINITE: return "FieldNotFinite";
    case SIMSEMI_ERR_TOO_LARGE: return "TooLarge";
    case SIMSEMI_ERR_DEGREE_ZERO: return "DegreeZero";
    case SIMSEMI_ERR_CERTIFICATE_MISMATCH: return "CertificateMismatch";
    case SIMSEMI_ERR_IO: return "Io";
    case SIMSEMI_ERR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

void simsemi_string_free(char* s) { std::free(s); }

simsemi_status simsemi_field_parse(const char* spec, simsemi_field** out) {
  if (!spec || !out) return null_argument("simsemi_field_parse");
  return guarded([&] { *out = new simsemi_field{simsemi::FieldDescriptor::parse(spec)}; });
}

int simsemi_field_is_finite(const simsemi_field* field) { return field && field->value.is_finite(); }
void simsemi_field_free(simsemi_field* field) { delete field; }

simsemi_status simsemi_matrix_parse(const simsemi_field* field, const char* text, simsemi_matrix** out) {
  if (!field || !text || !out) return null_argument("simsemi_matrix_parse");
  return guarded([&] { *out = new simsemi_matrix{simsemi::Matrix::parse(field->value, text)}; });
}

simsemi_status simsemi_matrix_read_file(const simsemi_field* field, const char* path, simsemi_matrix** out) {
  if (!field || !path || !out) return null_argument("simsemi_matrix_read_file");
  return guarded([&] { *out = new simsemi_matrix{simsemi::Matrix::read_file(field->value, path)}; });
}

simsemi_status simsemi_matrix_format(const simsemi_matrix* m, char** out) {
  if (!m || !out) return null_argument("simsemi_matrix_format");
  return guarded([&] { *out = dup_string(m->value.to_string()); });
}

size_t simsemi_matrix_rows(const simsemi_matrix* m) { return m ? m->value.rows() : 0; }
size_t simsemi_matrix_cols(const simsemi_matrix* m) { return m ? m->value.cols() : 0; }

simsemi_status simsemi_matrix_rank(const simsemi_matrix* m, size_t* out) {
  if (!m || !out) return null_argument("simsemi_matrix_rank");
  return guarded([&] { *out = simsemi::rank(m->value); });
}

void simsemi_matrix_free(simsemi_matrix* m) { delete m; }

simsemi_status simsemi_canon_report(const simsemi_matrix* m, char** out) {
  if (!m || !out) return null_argument("simsemi_canon_report");
  return guarded([&] { *out = dup_string(canon_text(m->value)); });
}

simsemi_status simsemi_factor(const simsemi_matrix* base, const simsemi_matrix* target,
                              simsemi_certificate** cert, simsemi_trace** trace) {
  if (!base || !target) return null_argument("simsemi_factor");
  return guarded([&] {
    auto result = simsemi::factor(base->value, target->value);
    auto c = std::make_unique<simsemi_certificate>(simsemi_certificate{std::move(result.certificate)});
    auto t = std::make_unique<simsemi_trace>(simsemi_trace{std::move(result.trace)});
    if (cert) *cert = c.release();
    if (trace) *trace = t.release();
  });
}

simsemi_status simsemi_trace_format(const simsemi_trace* trace, int detailed, char** out) {
  if (!trace || !out) return null_argument("simsemi_trace_format");
  return guarded([&] { *out = dup_string(trace->value.summary(detailed != 0)); });
}

void simsemi_trace_free(simsemi_trace* trace) { delete trace; }

size_t simsemi_certificate_length(const simsemi_certificate* cert) { return cert ? cert->value.length() : 0; }

simsemi_status simsemi_certificate_serialize(const simsemi_certificate* cert, char** out) {
  if (!cert || !out) return null_argument("simsemi_certificate_serialize");
  return guarded([&] { *out = dup_string(simsemi::serialize(cert->value)); });
}

simsemi_status simsemi_certificate_parse(const char* text, simsemi_certificate** out) {
  if (!text || !out) return null_argument("simsemi_certificate_parse");
  return guarded([&] { *out = new simsemi_certificate{simsemi::parse_certificate(text)}; });
}

simsemi_status simsemi_certificate_read_file(const char* path, simsemi_certificate** out) {
  if (!path || !out) return null_argument("simsemi_certificate_read_file");
  return guarded([&] { *out = new simsemi_certificate{simsemi::read_certificate(path)}; });
}

simsemi_status simsemi_certificate_write_file(const simsemi_certificate* cert, const char* path) {
  if (!cert || !path) return null_argument("simsemi_certificate_write_file");
  return guarded([&] { simsemi::write_certificate(cert->value, path); });
}

void simsemi_certificate_free(simsemi_certificate* cert) { delete cert; }

simsemi_status simsemi_verify(const simsemi_certificate* cert, simsemi_verification* out, char** reason) {
  if (!cert || !out) return null_argument("simsemi_verify");
  if (reason) *reason = nullptr;
  return guarded([&] {
    const auto report = simsemi::verify(cert->value);
    out->valid = report.valid ? 1 : 0;
    out->factor_count = report.factor_count;
    out->failing_index = report.failing_index ? static_cast<ptrdiff_t>(*report.failing_index) : -1;
    if (reason && report.failure_reason) *reason = dup_string(*report.failure_reason);
  });
}

void simsemi_closure_options_init(simsemi_closure_options* options) {
  if (!options) return;
  const simsemi::ClosureOptions defaults;
  options->jobs = defaults.jobs;
  options->max_universe = defaults.max_universe;
}

simsemi_status simsemi_closure_check(const simsemi_matrix* m, const simsemi_closure_options* options,
                                     simsemi_closure_report** out) {
  if (!m || !out) return null_argument("simsemi_closure_check");
  return guarded([&] {
    *out = new simsemi_closure_report{simsemi::theorem_check(m->value, closure_options(options))};
  });
}

simsemi_status simsemi_closure_sweep(const simsemi_field* field, size_t n, const simsemi_closure_options* options,
                                     simsemi_sweep** out) {
  if (!field || !out) return null_argument("simsemi_closure_sweep");
  return guarded([&] {
    auto reports = simsemi::theorem_sweep(field->value, n, closure_options(options));
    auto sweep = std::make_unique<simsemi_sweep>();
    for (auto& r : reports) sweep->reports.push_back({std::move(r)});
    *out = sweep.release();
  });
}

size_t simsemi_sweep_count(const simsemi_sweep* sweep) { return sweep ? sweep->reports.size() : 0; }

const simsemi_closure_report* simsemi_sweep_at(const simsemi_sweep* sweep, size_t index) {
  if (!sweep || index >= sweep->reports.size()) return nullptr;
  return &sweep->reports[index];
}

void simsemi_sweep_free(simsemi_sweep* sweep) { delete sweep; }

int simsemi_closure_report_equal(const simsemi_closure_report* r) { return r && r->value.equal; }
size_t simsemi_closure_report_class_size(const simsemi_closure_report* r) { return r ? r->value.class_size : 0; }
size_t simsemi_closure_report_closure_size(const simsemi_closure_report* r) { return r ? r->value.closure_size : 0; }
size_t simsemi_closure_report_s_p_size(const simsemi_closure_report* r) { return r ? r->value.s_p_size : 0; }
size_t simsemi_closure_report_rank(const simsemi_closure_report* r) { return r ? r->value.rank : 0; }

simsemi_status simsemi_closure_report_format(const simsemi_closure_report* r, char** out) {
  if (!r || !out) return null_argument("simsemi_closure_report_format");
  return guarded([&] { *out = dup_string(simsemi::format_report(r->value)); });
}

simsemi_status simsemi_closure_report_json(const simsemi_closure_report* r, char** out) {
  if (!r || !out) return null_argument("simsemi_closure_report_json");
  return guarded([&] { *out = dup_string(simsemi::report_json(r->value)); });
}

void simsemi_closure_report_free(simsemi_closure_report* r) { delete r; }

}  // extern "C"
