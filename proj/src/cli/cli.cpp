#include "fockgdo/cli/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "fockgdo/core/format.hpp"
#include "fockgdo/error.hpp"
#include "fockgdo/verify/suite.hpp"

namespace fockgdo::cli {

namespace fs = std::filesystem;
using verify::json;

namespace {

constexpr const char* kToolVersion = "1.0.0";

constexpr const char* kGrammar =
    "Complex values (--alpha, --Y): a, bi, a+bi, a-bi (i alone means 1i), or polar r@phi with phi in radians.\n"
    "Exit codes: 0 all checks pass, 1 a check failed, 2 invalid input.";

struct Flags {
  std::string family;
  std::string eta, M, L, gamma, theta, theta0, m, Y, alpha, r, parity;
  std::string dim;
  std::string tol, leak_tol, oracle_tol;
  std::string format = "json";
  std::string output;
  bool compare_paper = false;
  std::string manifest;
  std::string out_dir;
  std::string threads;
};

void add_state_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--family", f.family, "state family")->required();
  sub->add_option("--eta", f.eta, "real in (0,1)");
  sub->add_option("--M", f.M, "integer");
  sub->add_option("--L", f.L, "real, hypergeometric population");
  sub->add_option("--gamma", f.gamma, "real > 0, Polya");
  sub->add_option("--theta", f.theta, "real phase");
  sub->add_option("--theta0", f.theta0, "real, phase grid offset");
  sub->add_option("--m", f.m, "integer, phase grid index");
  sub->add_option("--Y", f.Y, "complex, |Y| != 1");
  sub->add_option("--alpha", f.alpha, "complex amplitude");
  sub->add_option("--r", f.r, "real squeezing");
  sub->add_option("--parity", f.parity, "even|odd");
  sub->add_option("--dim", f.dim, "truncation dimension");
  sub->add_option("--format", f.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--output", f.output, "write to this path instead of standard output");
}

void add_tolerance_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--tol", f.tol, "residual tolerance (default 1e-10)");
  sub->add_option("--leak-tol", f.leak_tol, "truncation leak tolerance (default 1e-10)");
  sub->add_option("--oracle-tol", f.oracle_tol, "oracle-equivalence tolerance (default 1e-12)");
}

states::StateParams params_from_flags(const Flags& f) {
  states::StateParams p;
  if (!f.eta.empty()) p.eta = parse_real(f.eta, "--eta");
  if (!f.M.empty()) p.M = parse_int(f.M, "--M");
  if (!f.L.empty()) p.L = parse_real(f.L, "--L");
  if (!f.gamma.empty()) p.gamma = parse_real(f.gamma, "--gamma");
  if (!f.theta.empty()) p.theta = parse_real(f.theta, "--theta");
  if (!f.theta0.empty()) p.theta0 = parse_real(f.theta0, "--theta0");
  if (!f.m.empty()) p.m = parse_int(f.m, "--m");
  if (!f.Y.empty()) p.Y = parse_complex(f.Y);
  if (!f.alpha.empty()) p.alpha = parse_complex(f.alpha);
  if (!f.r.empty()) p.r = parse_real(f.r, "--r");
  if (!f.parity.empty()) {
    if (f.parity == "even") p.parity = Parity::even;
    else if (f.parity == "odd") p.parity = Parity::odd;
    else throw InputError("--parity must be even or odd, got '" + f.parity + "'");
  }
  return p;
}

std::size_t resolve_dim(const Flags& f, const std::string& family, const states::StateParams& p) {
  if (f.dim.empty()) return verify::default_dim(family, p);
  const int d = parse_int(f.dim, "--dim");
  if (d < 1) throw InputError("dim must be >= 1, got " + std::to_string(d));
  return static_cast<std::size_t>(d);
}

verify::Tolerances tolerances_from_flags(const Flags& f) {
  verify::Tolerances t;
  auto positive = [](const std::string& s, const std::string& what) {
    const double v = parse_real(s, what);
    if (!(v > 0)) throw InputError(what + " must be positive, got " + s);
    return v;
  };
  if (!f.tol.empty()) t.residual = positive(f.tol, "--tol");
  if (!f.leak_tol.empty()) t.leak = positive(f.leak_tol, "--leak-tol");
  if (!f.oracle_tol.empty()) t.oracle = positive(f.oracle_tol, "--oracle-tol");
  return t;
}

json tolerances_json(const verify::Tolerances& t) {
  return json{{"residual", t.residual}, {"leak", t.leak}, {"oracle", t.oracle}};
}

verify::Tolerances tolerances_from_json(const json& j) {
  verify::Tolerances t;
  if (!j.is_object()) throw InputError("tolerances must be an object");
  for (const auto& [k, v] : j.items()) {
    const double x = verify::number_from_json(v);
    if (!(x > 0)) throw InputError("tolerance " + k + " must be positive");
    if (k == "residual") t.residual = x;
    else if (k == "leak") t.leak = x;
    else if (k == "oracle") t.oracle = x;
    else throw InputError("unknown tolerance '" + k + "'");
  }
  return t;
}

json config_json(const std::string& sub, const std::string& family, const states::StateParams& p, std::size_t dim,
                 const std::string& format) {
  json c;
  c["tool"] = "fockgdo";
  c["version"] = kToolVersion;
  c["subcommand"] = sub;
  c["family"] = family;
  c["params"] = verify::params_to_json(p);
  c["dim"] = dim;
  c["format"] = format;
  return c;
}

std::string csv_header(const json& config) {
  std::string s;
  for (const auto& [k, v] : config.items()) s += "# " + k + "=" + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
  return s;
}

// Writes through a temporary file in the same directory, then renames.
void write_atomic(const fs::path& path, const std::string& body) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream o(tmp, std::ios::binary | std::ios::trunc);
    if (!o) throw InputError("cannot write " + tmp.string());
    o << body;
    if (!o) throw InputError("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

void emit(const Flags& f, std::ostream& out, const std::string& body) {
  if (f.output.empty())
    out << body;
  else
    write_atomic(f.output, body);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// Tail mass the truncation drops, estimated from the same state at twice the dimension.
std::optional<double> truncation_tail(const std::string& family, const states::StateParams& p, std::size_t dim) {
  try {
    const FockState big = verify::build_state(family, p, 2 * dim);
    const auto probs = big.probabilities();
    double tail = 0.0;
    for (std::size_t n = dim; n < probs.size(); ++n) tail += probs[n];
    return tail;
  } catch (const Error&) {
    return std::nullopt;
  }
}

int cmd_state(const Flags& f, std::ostream& out) {
  const states::StateParams p = verify::resolve_params(f.family, params_from_flags(f));
  const std::string family = verify::canonical_family(f.family);
  const std::size_t dim = resolve_dim(f, f.family, p);
  const FockState s = verify::build_state(f.family, p, dim);
  const json config = config_json("state", family, p, dim, f.format);
  const auto tail = truncation_tail(f.family, p, dim);
  const auto probs = s.probabilities();
  const Support sup = s.support();

  if (f.format == "csv") {
    std::string body = csv_header(config);
    body += "# label=" + s.label() + "\n";
    body += "# norm_constant=" + format_real(s.norm_constant()) + "\n";
    body += "# support=" + std::to_string(sup.n_min) + ":" + std::to_string(sup.n_max) + "\n";
    body += "# leak=" + (tail ? format_real(*tail) : std::string("nan")) + "\n";
    body += "n,re,im,abs2\n";
    for (std::size_t n = 0; n < s.dim(); ++n) {
      const cplx a = s.amplitudes()[n];
      body += std::to_string(n) + "," + format_real(a.real()) + "," + format_real(a.imag()) + "," +
              format_real(probs[n]) + "\n";
    }
    emit(f, out, body);
    return kExitPass;
  }
  json j;
  j["config"] = config;
  j["family"] = family;
  j["label"] = s.label();
  j["parity"] = std::string(to_string(s.parity()));
  j["norm_constant"] = verify::number_to_json(s.norm_constant());
  j["support"] = json{{"n_min", sup.n_min}, {"n_max", sup.n_max}};
  j["leak"] = tail ? verify::number_to_json(*tail) : json("nan");
  json rows = json::array();
  for (std::size_t n = 0; n < s.dim(); ++n) {
    const cplx a = s.amplitudes()[n];
    rows.push_back(json{{"n", n},
                        {"re", verify::number_to_json(a.real())},
                        {"im", verify::number_to_json(a.imag())},
                        {"abs2", verify::number_to_json(probs[n])}});
  }
  j["amplitudes"] = std::move(rows);
  emit(f, out, dump(j));
  return kExitPass;
}

std::string render_report(const json& config, const verify::VerificationReport& r, const std::string& format) {
  if (format == "csv") return csv_header(config) + verify::to_csv(r);
  json j;
  j["config"] = config;
  const json body = verify::to_json(r);
  for (const auto& [k, v] : body.items()) j[k] = v;
  return dump(j);
}

int cmd_verify(const Flags& f, std::ostream& out) {
  const states::StateParams p = verify::resolve_params(f.family, params_from_flags(f));
  const std::size_t dim = resolve_dim(f, f.family, p);
  const verify::Tolerances tol = tolerances_from_flags(f);
  const auto r = verify::run_family_suite(f.family, p, dim, tol);
  json config = config_json("verify", r.family, p, dim, f.format);
  config["tolerances"] = tolerances_json(tol);
  emit(f, out, render_report(config, r, f.format));
  return r.passed() ? kExitPass : kExitCheckFailure;
}

int cmd_structure(const Flags& f, std::ostream& out) {
  const std::string family = verify::canonical_family(f.family);
  states::StateParams p = params_from_flags(f);
  if (family != "harmonic") p = verify::resolve_params(f.family, p);
  const std::size_t dim = resolve_dim(f, f.family, p);
  const auto r = verify::structure_table(f.family, p, dim, f.compare_paper);
  json config = config_json("structure-fn", family, p, dim, f.format);
  config["compare_paper"] = f.compare_paper;

  if (f.format == "csv") {
    std::string body = csv_header(config);
    body += f.compare_paper ? "n,F_derived,F_paper_re,F_paper_im,paper_finite,paper_real,match\n" : "n,F_derived\n";
    for (const auto& row : r.derived_vs_paper) {
      body += std::to_string(row.n) + "," + format_real(row.derived);
      if (f.compare_paper)
        body += "," + format_real(row.printed.real()) + "," + format_real(row.printed.imag()) + "," +
                (row.printed_finite ? "true" : "false") + "," + (row.printed_real ? "true" : "false") + "," +
                (row.match ? "true" : "false");
      body += "\n";
    }
    emit(f, out, body);
    return kExitPass;
  }
  json j;
  j["config"] = config;
  j["family"] = family;
  j["params"] = r.params;
  j["dim"] = dim;
  if (f.compare_paper) j["structure_source"] = r.structure_source;
  json rows = json::array();
  for (const auto& row : r.derived_vs_paper) {
    json x{{"n", row.n}, {"F_derived", verify::number_to_json(row.derived)}};
    if (f.compare_paper && !r.structure_source.empty()) {
      x["F_paper"] = json{{"re", verify::number_to_json(row.printed.real())},
                          {"im", verify::number_to_json(row.printed.imag())}};
      x["paper_finite"] = row.printed_finite;
      x["paper_real"] = row.printed_real;
      x["match"] = row.match;
    }
    rows.push_back(std::move(x));
  }
  j["rows"] = std::move(rows);
  emit(f, out, dump(j));
  return kExitPass;
}

struct BatchResult {
  std::string family;
  std::string status;  // passed, failed, input-error, numerical-error
  std::string message;
  std::size_t failed_checks = 0;
  std::size_t total_checks = 0;
  std::string file;
};

BatchResult run_entry(const json& entry, std::size_t index, const fs::path& dir, const std::string& format) {
  BatchResult res;
  char name[32];
  std::snprintf(name, sizeof name, "entry_%04zu", index);
  res.file = std::string(name) + (format == "csv" ? ".csv" : ".json");
  try {
    if (!entry.is_object()) throw InputError("entry must be an object");
    for (const auto& [k, v] : entry.items())
      if (k != "family" && k != "params" && k != "dim" && k != "tolerances")
        throw InputError("unknown entry key '" + k + "'");
    if (!entry.contains("family") || !entry["family"].is_string()) throw InputError("entry needs a family name");
    res.family = entry["family"].get<std::string>();
    const states::StateParams p =
        verify::resolve_params(res.family, verify::params_from_json(entry.value("params", json::object())));
    std::size_t dim = verify::default_dim(res.family, p);
    if (entry.contains("dim")) {
      if (!entry["dim"].is_number_integer() || entry["dim"].get<long>() < 1)
        throw InputError("dim must be a positive integer");
      dim = entry["dim"].get<std::size_t>();
    }
    const verify::Tolerances tol =
        entry.contains("tolerances") ? tolerances_from_json(entry["tolerances"]) : verify::Tolerances{};
    const auto r = verify::run_family_suite(res.family, p, dim, tol);
    res.family = r.family;
    res.total_checks = r.checks.size();
    res.failed_checks = r.failed_count();
    res.status = r.passed() ? "passed" : "failed";
    json config = config_json("batch", r.family, p, dim, format);
    config["tolerances"] = tolerances_json(tol);
    config["entry"] = index;
    write_atomic(dir / res.file, render_report(config, r, format));
  } catch (const InputError& e) {
    res.status = "input-error";
    res.message = e.what();
  } catch (const Error& e) {
    res.status = "numerical-error";
    res.message = e.what();
  } catch (const json::exception& e) {
    res.status = "input-error";
    res.message = e.what();
  }
  if (res.status == "input-error" || res.status == "numerical-error") {
    json j{{"entry", index}, {"family", res.family}, {"status", res.status}, {"message", res.message}};
    try {
      write_atomic(dir / res.file, format == "csv" ? "# status=" + res.status + "\n# message=" + res.message + "\n"
                                                   : dump(j));
    } catch (const Error&) {
    }
  }
  return res;
}

int cmd_batch(const Flags& f, std::ostream& out) {
  std::ifstream in(f.manifest);
  if (!in) throw InputError("cannot read manifest " + f.manifest);
  json manifest;
  try {
    manifest = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("manifest is not valid JSON: ") + e.what());
  }
  const json entries = manifest.is_object() ? manifest.value("entries", json::array()) : manifest;
  if (!entries.is_array()) throw InputError("manifest must be an array of entries or an object with 'entries'");

  const fs::path dir = f.out_dir.empty() ? fs::path("batch_reports") : fs::path(f.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError("cannot create output directory " + dir.string());

  std::size_t threads = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  if (!f.threads.empty()) {
    const int t = parse_int(f.threads, "--threads");
    if (t < 1) throw InputError("--threads must be >= 1");
    threads = static_cast<std::size_t>(t);
  }

  std::vector<BatchResult> results(entries.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < entries.size(); i = next++) results[i] = run_entry(entries[i], i, dir, f.format);
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < std::min(threads, std::max<std::size_t>(1, entries.size())); ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::vector<std::string> fam_order;
  std::vector<bool> fam_ok;
  std::size_t n_pass = 0, n_fail = 0, n_input = 0, n_num = 0;
  json rows = json::array();
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    if (r.status == "passed") ++n_pass;
    else if (r.status == "failed") ++n_fail;
    else if (r.status == "input-error") ++n_input;
    else ++n_num;
    if (!r.family.empty() && r.status != "input-error") {
      auto it = std::find(fam_order.begin(), fam_order.end(), r.family);
      if (it == fam_order.end()) {
        fam_order.push_back(r.family);
        fam_ok.push_back(r.status == "passed");
      } else {
        fam_ok[static_cast<std::size_t>(it - fam_order.begin())] =
            fam_ok[static_cast<std::size_t>(it - fam_order.begin())] && r.status == "passed";
      }
    }
    json row{{"entry", i}, {"family", r.family}, {"status", r.status}, {"checks", r.total_checks},
             {"failed_checks", r.failed_checks}, {"file", r.file}};
    if (!r.message.empty()) row["message"] = r.message;
    rows.push_back(std::move(row));
  }
  json families = json::object();
  std::size_t fam_pass = 0;
  for (std::size_t k = 0; k < fam_order.size(); ++k) {
    families[fam_order[k]] = fam_ok[k] ? "passed" : "failed";
    fam_pass += fam_ok[k] ? 1 : 0;
  }
  json summary;
  summary["config"] = json{{"tool", "fockgdo"}, {"version", kToolVersion}, {"subcommand", "batch"},
                           {"manifest", fs::path(f.manifest).filename().string()}, {"format", f.format}};
  summary["entries"] = std::move(rows);
  summary["totals"] = json{{"entries", results.size()}, {"passed", n_pass}, {"failed", n_fail},
                           {"input_error", n_input}, {"numerical_error", n_num}};
  summary["families"] = std::move(families);
  summary["families_passed"] = std::to_string(fam_pass) + "/" + std::to_string(fam_order.size());
  const std::string body = dump(summary);
  write_atomic(dir / "summary.json", body);
  out << body;
  if (n_fail > 0 || n_num > 0) return kExitCheckFailure;
  if (n_input > 0) return kExitInputError;
  return kExitPass;
}

std::string families_help() {
  std::string s = "Families:\n";
  for (const auto& f : verify::family_registry()) {
    std::string line = "  " + f.name;
    line.resize(std::max<std::size_t>(line.size() + 1, 16), ' ');
    line += f.description;
    std::string req;
    for (const auto& k : f.required) req += " --" + k;
    for (const auto& k : f.optional) req += " [--" + k + "]";
    s += line + " :" + req + "\n";
  }
  return s;
}

}  // namespace

double parse_real(const std::string& text, const std::string& what) {
  const char* b = text.c_str();
  char* e = nullptr;
  errno = 0;
  const double v = std::strtod(b, &e);
  if (text.empty() || e != b + text.size() || errno == ERANGE || !std::isfinite(v))
    throw InputError(what + " expects a finite real number, got '" + text + "'");
  return v;
}

int parse_int(const std::string& text, const std::string& what) {
  const char* b = text.c_str();
  char* e = nullptr;
  errno = 0;
  const long v = std::strtol(b, &e, 10);
  if (text.empty() || e != b + text.size() || errno == ERANGE || v < -1000000000L || v > 1000000000L)
    throw InputError(what + " expects an integer, got '" + text + "'");
  return static_cast<int>(v);
}

std::complex<double> parse_complex(const std::string& text) {
  const auto bad = [&] { return InputError("cannot parse complex value '" + text + "' (expected a+bi or r@phi)"); };
  if (text.empty()) throw bad();
  if (const auto at = text.find('@'); at != std::string::npos) {
    const double r = parse_real(text.substr(0, at), "modulus");
    const double phi = parse_real(text.substr(at + 1), "phase");
    return std::polar(r, phi);
  }
  if (text.back() != 'i') return {parse_real(text, "complex value"), 0.0};
  const std::string body = text.substr(0, text.size() - 1);
  // Split at the last sign that is not the leading one and not part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const auto imag_part = [&](const std::string& s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_real(s, "imaginary part");
  };
  try {
    if (split == std::string::npos) return {0.0, imag_part(body)};
    return {parse_real(body.substr(0, split), "real part"), imag_part(body.substr(split))};
  } catch (const InputError&) {
    throw bad();
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fock-space ladder operators and deformed-oscillator checks", "fockgdo"};
  app.require_subcommand(1);
  app.footer(std::string(kGrammar) + "\n\n" + families_help());
  app.set_version_flag("--version", kToolVersion);

  Flags f;
  auto* st = app.add_subcommand("state", "print the amplitude table of a state");
  add_state_flags(st, f);
  auto* ve = app.add_subcommand("verify", "run the verification suite of a family");
  add_state_flags(ve, f);
  add_tolerance_flags(ve, f);
  auto* sf = app.add_subcommand("structure-fn", "tabulate the structure function");
  add_state_flags(sf, f);
  sf->add_flag("--compare-paper", f.compare_paper, "add the printed closed form and a match column");
  auto* ba = app.add_subcommand("batch", "run verification suites listed in a manifest");
  ba->add_option("manifest", f.manifest, "JSON manifest: [{family, params, dim?, tolerances?}, ...]")->required();
  ba->add_option("--out-dir", f.out_dir, "directory for per-entry reports and summary.json");
  ba->add_option("--threads", f.threads, "worker threads");
  ba->add_option("--format", f.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  try {
    if (st->parsed()) return cmd_state(f, out);
    if (ve->parsed()) return cmd_verify(f, out);
    if (sf->parsed()) return cmd_structure(f, out);
    return cmd_batch(f, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const verify::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const Error& e) {
    err << "numerical error: " << e.what() << "\n";
    return kExitCheckFailure;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace fockgdo::cli
