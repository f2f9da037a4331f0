#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "fockgdo/core/check.hpp"

namespace fockgdo::verify {

using json = nlohmann::ordered_json;

/// Derived structure function next to a printed closed form.
/// match: printed value is finite and within tolerance of the derived one.
/// printed_real: imaginary part of the printed value is negligible.
struct StructureRow {
  long n = 0;
  double derived = 0.0;
  std::complex<double> printed;
  bool printed_finite = true;
  bool printed_real = true;
  bool match = false;
};

/// A printed formula that does not hold as written. Informational:
/// errata never enter the pass/fail decision.
struct Erratum {
  std::string paper_eq;
  std::string kind;  // "misprint" or "notation"
  std::string note;
  double printed_residual = -1.0;    // -1 when not applicable
  double corrected_residual = -1.0;  // -1 when not applicable
};

struct VerificationReport {
  std::string family;
  json params = json::object();
  std::size_t dim = 0;
  std::vector<Check> checks;
  std::string structure_source;  // equation the printed column comes from
  std::vector<StructureRow> derived_vs_paper;
  std::vector<Erratum> errata;

  bool passed() const;
  std::size_t failed_count() const;
};

/// Doubles are written exactly; non-finite values are encoded as the strings "nan", "inf", "-inf".
json number_to_json(double x);
double number_from_json(const json& j);

json to_json(const VerificationReport& r);
VerificationReport report_from_json(const json& j);

/// Rows of checks, then rows of the structure table, no quoting. Commas in
/// text fields are replaced by ';'. Reals use 17 significant digits.
std::string to_csv(const VerificationReport& r);

}  // namespace fockgdo::verify
