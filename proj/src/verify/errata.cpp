#include "fockgdo/verify/errata.hpp"

#include <numbers>

#include "fockgdo/verify/suite.hpp"

namespace fockgdo::verify {

std::size_t ErrataEntry::mismatches() const {
  std::size_t k = 0;
  for (const auto& r : rows) k += r.match ? 0 : 1;
  return k;
}

std::size_t ErrataEntry::non_real() const {
  std::size_t k = 0;
  for (const auto& r : rows) k += (r.printed_finite && !r.printed_real) ? 1 : 0;
  return k;
}

std::vector<ErrataEntry> errata_table() {
  using states::StateParams;
  std::vector<std::pair<std::string, StateParams>> grid;
  {
    StateParams p;
    p.eta = 0.5;
    p.M = 4;
    grid.emplace_back("binomial", p);
  }
  {
    StateParams p;
    p.L = 40;
    p.eta = 0.5;
    p.M = 5;
    grid.emplace_back("hgs", p);
  }
  {
    StateParams p;
    p.eta = 0.4;
    p.gamma = 0.7;
    p.M = 5;
    grid.emplace_back("polya", p);
  }
  {
    StateParams p;
    p.theta = 0.7;
    p.M = 4;
    grid.emplace_back("rbs", p);
  }
  {
    StateParams p;
    // theta0 = 0 with m = 2, M = 7 puts theta_m at pi/2, where the printed phase is real
    p.theta0 = 0.3;
    p.m = 2;
    p.M = 7;
    grid.emplace_back("pbps", p);
  }
  {
    StateParams p;
    p.Y = std::polar(0.3, std::numbers::pi / 3);
    p.M = 6;
    grid.emplace_back("ggs", p);
  }

  std::vector<ErrataEntry> out;
  for (const auto& [fam, p] : grid) {
    const VerificationReport r = run_family_suite(fam, p, static_cast<std::size_t>(*p.M) + 8);
    ErrataEntry e{fam, r.params, r.derived_vs_paper, r.errata};
    const std::size_t bad = e.mismatches();
    if (bad > 0) {
      std::string note = std::to_string(bad) + " of " + std::to_string(e.rows.size()) +
                         " printed values disagree with the structure function derived from the state";
      if (!e.rows.empty() && !e.rows.front().match) note += "; printed F(0) != 0";
      if (e.non_real() > 0) note += "; printed form is not real";
      e.notes.insert(e.notes.begin(), Erratum{"Eq. 29", "misprint", note, -1.0, -1.0});
    }
    out.push_back(std::move(e));
  }
  return out;
}

json errata_to_json(const std::vector<ErrataEntry>& table) {
  json arr = json::array();
  for (const auto& e : table) {
    VerificationReport r;
    r.family = e.family;
    r.params = e.params;
    r.dim = 0;
    r.structure_source = "Eq. 29";
    r.derived_vs_paper = e.rows;
    r.errata = e.notes;
    json j = to_json(r);
    json entry;
    entry["family"] = e.family;
    entry["params"] = e.params;
    entry["mismatches"] = e.mismatches();
    entry["non_real"] = e.non_real();
    entry["derived_vs_paper"] = j["derived_vs_paper"];
    entry["errata"] = j["errata"];
    arr.push_back(std::move(entry));
  }
  return arr;
}

}  // namespace fockgdo::verify
