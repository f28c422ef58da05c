// Command-line front end over the simsemi C API.
//
// Exit codes: 0 success, 1 parse/input error, 2 precondition violated,
// 3 verification failed, 4 capacity exceeded, 5 internal error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "simsemi/simsemi.h"

namespace {

enum Exit { kOk = 0, kParse = 1, kPrecondition = 2, kInvalid = 3, kCapacity = 4, kInternal = 5 };

int exit_for(simsemi_status s) {
  switch (s) {
    case SIMSEMI_OK: return kOk;
    case SIMSEMI_ERR_PARSE:
    case SIMSEMI_ERR_INVALID_FIELD:
    case SIMSEMI_ERR_IO:
    case SIMSEMI_ERR_FIELD_NOT_FINITE:
      return kParse;
    case SIMSEMI_ERR_TOO_LARGE: return kCapacity;
    case SIMSEMI_ERR_INTERNAL: return kInternal;
    default: return kPrecondition;
  }
}

struct Failure {
  int code;
};

void check(simsemi_status s, const std::string& context) {
  if (s == SIMSEMI_OK) return;
  std::cerr << "error: " << context << ": " << simsemi_last_error() << " (" << simsemi_status_name(s) << ")\n";
  throw Failure{exit_for(s)};
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using FieldPtr = std::unique_ptr<simsemi_field, Deleter<simsemi_field, simsemi_field_free>>;
using MatrixPtr = std::unique_ptr<simsemi_matrix, Deleter<simsemi_matrix, simsemi_matrix_free>>;
using CertPtr = std::unique_ptr<simsemi_certificate, Deleter<simsemi_certificate, simsemi_certificate_free>>;
using TracePtr = std::unique_ptr<simsemi_trace, Deleter<simsemi_trace, simsemi_trace_free>>;
using ReportPtr = std::unique_ptr<simsemi_closure_report, Deleter<simsemi_closure_report, simsemi_closure_report_free>>;
using SweepPtr = std::unique_ptr<simsemi_sweep, Deleter<simsemi_sweep, simsemi_sweep_free>>;

std::string take(char* s) {
  std::string out = s ? s : "";
  simsemi_string_free(s);
  return out;
}

FieldPtr load_field(const std::string& spec) {
  simsemi_field* f = nullptr;
  check(simsemi_field_parse(spec.c_str(), &f), "--field " + spec);
  return FieldPtr(f);
}

MatrixPtr load_matrix(const simsemi_field* field, const std::string& path) {
  simsemi_matrix* m = nullptr;
  check(simsemi_matrix_read_file(field, path.c_str(), &m), path);
  return MatrixPtr(m);
}

int cmd_factor(const std::string& field_spec, const std::string& base_path, const std::string& target_path,
               const std::string& out_path, bool detailed) {
  auto field = load_field(field_spec);
  auto base = load_matrix(field.get(), base_path);
  auto target = load_matrix(field.get(), target_path);
  simsemi_certificate* c = nullptr;
  simsemi_trace* t = nullptr;
  const auto s = simsemi_factor(base.get(), target.get(), &c, &t);
  check(s, "factor");
  CertPtr cert(c);
  TracePtr trace(t);
  check(simsemi_certificate_write_file(cert.get(), out_path.c_str()), out_path);
  char* summary = nullptr;
  check(simsemi_trace_format(trace.get(), detailed ? 1 : 0, &summary), "trace");
  std::cout << "factor_count " << simsemi_certificate_length(cert.get()) << '\n' << take(summary);
  return kOk;
}

int cmd_verify(const std::string& cert_path) {
  simsemi_certificate* c = nullptr;
  check(simsemi_certificate_read_file(cert_path.c_str(), &c), cert_path);
  CertPtr cert(c);
  simsemi_verification v{};
  char* reason = nullptr;
  check(simsemi_verify(cert.get(), &v, &reason), "verify");
  const std::string why = take(reason);
  std::cout << "factor_count " << v.factor_count << '\n';
  if (v.valid) {
    std::cout << "valid yes\n";
    return kOk;
  }
  std::cout << "valid no\n";
  if (v.failing_index >= 0) std::cout << "failing_index " << v.failing_index << '\n';
  if (!why.empty()) std::cout << "reason " << why << '\n';
  return kInvalid;
}

int cmd_canon(const std::string& field_spec, const std::string& matrix_path) {
  auto field = load_field(field_spec);
  auto m = load_matrix(field.get(), matrix_path);
  char* report = nullptr;
  check(simsemi_canon_report(m.get(), &report), "canon");
  std::cout << take(report);
  return kOk;
}

std::size_t parse_sweep(const std::string& arg) {
  const std::string prefix = "n=";
  if (arg.rfind(prefix, 0) != 0 || arg.size() == prefix.size() ||
      arg.find_first_not_of("0123456789", prefix.size()) != std::string::npos) {
    std::cerr << "error: --sweep expects n=<k>, got '" << arg << "'\n";
    throw Failure{kParse};
  }
  return std::stoul(arg.substr(prefix.size()));
}

int cmd_closure_check(const std::string& field_spec, const std::string& matrix_path, const std::string& sweep_arg,
                      unsigned jobs, std::uint64_t max_universe, const std::string& json_path) {
  auto field = load_field(field_spec);
  if (!simsemi_field_is_finite(field.get())) {
    std::cerr << "error: closure-check needs a finite field (gf:<p>)\n";
    return kParse;
  }
  simsemi_closure_options options;
  simsemi_closure_options_init(&options);
  options.jobs = jobs;
  if (max_universe) options.max_universe = max_universe;

  std::vector<const simsemi_closure_report*> reports;
  ReportPtr single;
  SweepPtr sweep;
  if (!sweep_arg.empty()) {
    const auto n = parse_sweep(sweep_arg);
    simsemi_sweep* s = nullptr;
    check(simsemi_closure_sweep(field.get(), n, &options, &s), "closure sweep");
    sweep.reset(s);
    for (std::size_t i = 0; i < simsemi_sweep_count(s); ++i) reports.push_back(simsemi_sweep_at(s, i));
  } else {
    auto m = load_matrix(field.get(), matrix_path);
    simsemi_closure_report* r = nullptr;
    check(simsemi_closure_check(m.get(), &options, &r), "closure check");
    single.reset(r);
    reports.push_back(r);
  }

  bool all_equal = true;
  std::string json = "[";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    char* text = nullptr;
    check(simsemi_closure_report_format(reports[i], &text), "report");
    std::cout << "class " << i + 1 << '\n' << take(text);
    all_equal = all_equal && simsemi_closure_report_equal(reports[i]);
    if (!json_path.empty()) {
      char* record = nullptr;
      check(simsemi_closure_report_json(reports[i], &record), "report");
      json += (i ? "," : "") + take(record);
    }
  }
  json += "]\n";
  std::cout << "classes " << reports.size() << ", all_equal " << (all_equal ? "yes" : "no") << '\n';
  if (!json_path.empty()) {
    std::ofstream out(json_path);
    if (!(out << json)) {
      std::cerr << "error: cannot write " << json_path << '\n';
      return kParse;
    }
  }
  return all_equal ? kOk : kInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"simsemi: products of conjugates of singular matrices, with certificates"};
  app.require_subcommand(1);

  std::string field, base, target, out, cert, matrix, sweep, json;
  bool detailed = false;
  unsigned jobs = 1;
  std::uint64_t max_universe = 0;

  auto* factor = app.add_subcommand("factor", "Write --target as a product of conjugates of --base");
  factor->add_option("--field", field, "rational or gf:<p>")->required();
  factor->add_option("--base", base, "Base matrix file")->required();
  factor->add_option("--target", target, "Target matrix file")->required();
  factor->add_option("--out", out, "Certificate output file")->required();
  factor->add_flag("--trace", detailed, "Print one line per construction step");

  auto* verify = app.add_subcommand("verify", "Replay a certificate");
  verify->add_option("--cert", cert, "Certificate file")->required();

  auto* canon = app.add_subcommand("canon", "Print canonical-form data of a matrix");
  canon->add_option("--field", field, "rational or gf:<p>")->required();
  canon->add_option("--matrix", matrix, "Matrix file")->required();

  auto* closure = app.add_subcommand("closure-check", "Compare the semigroup generated by a similarity class with S_p");
  closure->add_option("--field", field, "gf:<p>")->required();
  auto* matrix_opt = closure->add_option("--matrix", matrix, "Matrix file");
  auto* sweep_opt = closure->add_option("--sweep", sweep, "n=<k>: every singular class of k x k matrices");
  matrix_opt->excludes(sweep_opt);
  closure->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1u, 256u));
  closure->add_option("--max-universe", max_universe, "Largest number of matrices to enumerate");
  closure->add_option("--json", json, "Also write the reports as JSON to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    if (*factor) return cmd_factor(field, base, target, out, detailed);
    if (*verify) return cmd_verify(cert);
    if (*canon) return cmd_canon(field, matrix);
    if (*closure) {
      if (matrix.empty() && sweep.empty()) {
        std::cerr << "error: closure-check needs --matrix or --sweep\n";
        return kParse;
      }
      return cmd_closure_check(field, matrix, sweep, jobs, max_universe, json);
    }
  } catch (const Failure& f) {
    return f.code;
  }
  return kInternal;
}
