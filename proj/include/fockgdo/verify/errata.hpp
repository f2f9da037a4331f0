#pragma once

#include <string>
#include <vector>

#include "fockgdo/verify/report.hpp"

namespace fockgdo::verify {

/// Derived F(n) against the printed structure function of one finite family, n in [0, M].
struct ErrataEntry {
  std::string family;
  json params;
  std::vector<StructureRow> rows;
  std::vector<Erratum> notes;

  std::size_t mismatches() const;
  std::size_t non_real() const;
};

/// BS, HGS, PS, RBS, PBPS, GGS at fixed parameters.
std::vector<ErrataEntry> errata_table();

json errata_to_json(const std::vector<ErrataEntry>& table);

}  // namespace fockgdo::verify
