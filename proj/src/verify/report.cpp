#include "fockgdo/verify/report.hpp"

#include <cmath>

#include "fockgdo/core/format.hpp"
#include "fockgdo/error.hpp"

namespace fockgdo::verify {

namespace {

std::string csv_text(std::string s) {
  for (auto& ch : s)
    if (ch == ',' || ch == '\n' || ch == '\r') ch = ';';
  return s;
}

json complex_to_json(std::complex<double> z) { return json{{"re", number_to_json(z.real())}, {"im", number_to_json(z.imag())}}; }

std::complex<double> complex_from_json(const json& j) {
  return {number_from_json(j.at("re")), number_from_json(j.at("im"))};
}

}  // namespace

bool VerificationReport::passed() const { return failed_count() == 0; }

std::size_t VerificationReport::failed_count() const {
  std::size_t n = 0;
  for (const auto& c : checks)
    if (!c.passed) ++n;
  return n;
}

json number_to_json(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double number_from_json(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "nan") return NAN;
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    throw InputError("expected a number, got string '" + s + "'");
  }
  if (!j.is_number()) throw InputError("expected a number");
  return j.get<double>();
}

json to_json(const VerificationReport& r) {
  json j;
  j["family"] = r.family;
  j["params"] = r.params;
  j["dim"] = r.dim;
  j["passed"] = r.passed();
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back(json{{"name", c.name},
                          {"paper_eq", c.paper_eq},
                          {"residual", number_to_json(c.residual)},
                          {"tolerance", number_to_json(c.tolerance)},
                          {"leak", number_to_json(c.leak)},
                          {"leak_tolerance", number_to_json(c.leak_tolerance)},
                          {"passed", c.passed},
                          {"detail", c.detail}});
  }
  j["checks"] = std::move(checks);
  j["structure_source"] = r.structure_source;
  json rows = json::array();
  for (const auto& s : r.derived_vs_paper) {
    rows.push_back(json{{"n", s.n},
                        {"F_derived", number_to_json(s.derived)},
                        {"F_paper", complex_to_json(s.printed)},
                        {"paper_finite", s.printed_finite},
                        {"paper_real", s.printed_real},
                        {"match", s.match}});
  }
  j["derived_vs_paper"] = std::move(rows);
  json errata = json::array();
  for (const auto& e : r.errata) {
    errata.push_back(json{{"paper_eq", e.paper_eq},
                          {"kind", e.kind},
                          {"note", e.note},
                          {"printed_residual", number_to_json(e.printed_residual)},
                          {"corrected_residual", number_to_json(e.corrected_residual)}});
  }
  j["errata"] = std::move(errata);
  return j;
}

VerificationReport report_from_json(const json& j) {
  VerificationReport r;
  r.family = j.at("family").get<std::string>();
  r.params = j.at("params");
  r.dim = j.at("dim").get<std::size_t>();
  for (const auto& c : j.at("checks")) {
    Check k;
    k.name = c.at("name").get<std::string>();
    k.paper_eq = c.at("paper_eq").get<std::string>();
    k.residual = number_from_json(c.at("residual"));
    k.tolerance = number_from_json(c.at("tolerance"));
    k.leak = number_from_json(c.at("leak"));
    k.leak_tolerance = number_from_json(c.at("leak_tolerance"));
    k.passed = c.at("passed").get<bool>();
    k.detail = c.at("detail").get<std::string>();
    r.checks.push_back(std::move(k));
  }
  r.structure_source = j.value("structure_source", std::string{});
  for (const auto& s : j.at("derived_vs_paper")) {
    StructureRow row;
    row.n = s.at("n").get<long>();
    row.derived = number_from_json(s.at("F_derived"));
    row.printed = complex_from_json(s.at("F_paper"));
    row.printed_finite = s.at("paper_finite").get<bool>();
    row.printed_real = s.at("paper_real").get<bool>();
    row.match = s.at("match").get<bool>();
    r.derived_vs_paper.push_back(row);
  }
  for (const auto& e : j.at("errata")) {
    Erratum x;
    x.paper_eq = e.at("paper_eq").get<std::string>();
    x.kind = e.at("kind").get<std::string>();
    x.note = e.at("note").get<std::string>();
    x.printed_residual = number_from_json(e.at("printed_residual"));
    x.corrected_residual = number_from_json(e.at("corrected_residual"));
    r.errata.push_back(std::move(x));
  }
  return r;
}

std::string to_csv(const VerificationReport& r) {
  std::string out = "section,family,name,paper_eq,residual,tolerance,leak,leak_tolerance,passed,detail\n";
  for (const auto& c : r.checks) {
    out += "check," + csv_text(r.family) + "," + csv_text(c.name) + "," + csv_text(c.paper_eq) + "," +
           format_real(c.residual) + "," + format_real(c.tolerance) + "," + format_real(c.leak) + "," +
           format_real(c.leak_tolerance) + "," + (c.passed ? "true" : "false") + "," + csv_text(c.detail) + "\n";
  }
  if (!r.derived_vs_paper.empty()) {
    out += "section,family,n,F_derived,F_paper_re,F_paper_im,paper_finite,paper_real,match,source\n";
    for (const auto& s : r.derived_vs_paper) {
      out += "structure," + csv_text(r.family) + "," + std::to_string(s.n) + "," + format_real(s.derived) + "," +
             format_real(s.printed.real()) + "," + format_real(s.printed.imag()) + "," +
             (s.printed_finite ? "true" : "false") + "," + (s.printed_real ? "true" : "false") + "," +
             (s.match ? "true" : "false") + "," + csv_text(r.structure_source) + "\n";
    }
  }
  return out;
}

}  // namespace fockgdo::verify
