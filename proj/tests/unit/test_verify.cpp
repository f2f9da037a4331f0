#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>
#include <regex>
#include <set>

#include "fockgdo/error.hpp"
#include "fockgdo/verify/errata.hpp"
#include "fockgdo/verify/grid.hpp"
#include "fockgdo/verify/pmf.hpp"
#include "fockgdo/verify/suite.hpp"

using namespace fockgdo;
using namespace fockgdo::verify;

namespace {

std::set<int> equation_numbers(const std::string& label) {
  std::set<int> out;
  static const std::regex range(R"((\d+)\s*-\s*(\d+))");
  std::smatch m;
  std::string rest = label;
  while (std::regex_search(rest, m, range)) {
    for (int k = std::stoi(m[1]); k <= std::stoi(m[2]); ++k) out.insert(k);
    rest = m.prefix().str() + " " + m.suffix().str();
  }
  static const std::regex single(R"(\d+)");
  for (std::sregex_iterator it(rest.begin(), rest.end(), single), end; it != end; ++it) out.insert(std::stoi(it->str()));
  return out;
}

states::StateParams bs(double eta, int M) {
  states::StateParams p;
  p.eta = eta;
  p.M = M;
  return p;
}

}  // namespace

TEST_CASE("every grid family passes its suite") {
  REQUIRE(acceptance_grid().size() == 15);
  for (const auto& e : acceptance_grid()) {
    const auto r = run_family_suite(e.family, e.params, e.dim);
    for (const auto& c : r.checks) {
      INFO(e.family << ": " << c.name << " [" << c.paper_eq << "] residual=" << c.residual << " leak=" << c.leak);
      CHECK(c.passed);
    }
    CHECK(r.passed());
  }
}

TEST_CASE("suite examples") {
  CHECK(run_family_suite("binomial", bs(0.3, 10), 32).passed());
  states::StateParams vac;
  vac.alpha = 0.0;
  CHECK(run_family_suite("coherent", vac, 8).passed());
  states::StateParams sv;
  sv.r = 0.8;
  sv.theta = 0.5;
  const auto r = run_family_suite("svs", sv, 128);
  CHECK(r.passed());
  bool has76 = false, disent = false;
  for (const auto& c : r.checks) {
    has76 = has76 || c.paper_eq.find("76") != std::string::npos;
    disent = disent || c.paper_eq.find("67") != std::string::npos;
  }
  CHECK(has76);
  CHECK(disent);
}

TEST_CASE("passed is residual <= tol and leak <= leak tol") {
  CHECK(make_check("a", "Eq. 1", 1e-11, 1e-10, 0.0, 1e-10).passed);
  CHECK_FALSE(make_check("a", "Eq. 1", 2e-10, 1e-10, 0.0, 1e-10).passed);
  CHECK_FALSE(make_check("a", "Eq. 1", 0.0, 1e-10, 2e-10, 1e-10).passed);
  CHECK_FALSE(make_check("a", "Eq. 1", NAN, 1e-10, 0.0, 1e-10).passed);
  // tightened tolerances propagate into a failing report
  Tolerances tight{1e-30, 1e-30, 1e-30};
  CHECK_FALSE(run_family_suite("binomial", bs(0.3, 4), 12, tight).passed());
}

TEST_CASE("reports round-trip through JSON, including non-finite values") {
  auto r = run_family_suite("rbs", [] {
    states::StateParams p;
    p.theta = 0.7;
    p.M = 4;
    return p;
  }(), 12);
  r.checks.push_back(make_check("synthetic", "Eq. 0", NAN, 1e-10, INFINITY, 1e-10, "x,y"));
  const json j = to_json(r);
  const auto back = report_from_json(json::parse(j.dump()));
  CHECK(to_json(back).dump() == j.dump());
  CHECK(std::isnan(back.checks.back().residual));
  CHECK(std::isinf(back.checks.back().leak));
  CHECK(j.at("checks").back().at("residual") == "nan");
  CHECK(back.derived_vs_paper.size() == 5);

  const std::string csv = to_csv(r);
  CHECK(csv.find('"') == std::string::npos);
  CHECK(csv.find("x;y") != std::string::npos);
  CHECK(csv.rfind("section,family,name,paper_eq,residual,tolerance,leak,leak_tolerance,passed,detail\n", 0) == 0);
}

TEST_CASE("reports are deterministic") {
  for (const auto& e : acceptance_grid())
    CHECK(to_json(run_family_suite(e.family, e.params, e.dim)).dump() ==
          to_json(run_family_suite(e.family, e.params, e.dim)).dump());
}

TEST_CASE("structure table flags the printed forms") {
  const auto t = structure_table("binomial", bs(0.5, 4), 12, true);
  REQUIRE(t.derived_vs_paper.size() == 5);
  CHECK(t.derived_vs_paper[0].derived == 0.0);
  CHECK(t.derived_vs_paper[0].printed.real() == doctest::Approx(125.0));
  CHECK_FALSE(t.derived_vs_paper[0].match);
  const auto plain = structure_table("binomial", bs(0.5, 4), 12, false);
  CHECK(plain.derived_vs_paper.size() == 12);
  const auto h = structure_table("harmonic", {}, 6, true);
  for (const auto& row : h.derived_vs_paper) CHECK(row.match);
}

TEST_CASE("errata table") {
  const auto table = errata_table();
  REQUIRE(table.size() == 6);
  for (const auto& e : table) {
    INFO(e.family);
    CHECK(e.rows.size() == static_cast<std::size_t>(e.params.at("M").get<int>()) + 1);
    CHECK(e.rows.front().derived == 0.0);
    CHECK(e.mismatches() > 0);
  }
  for (const char* f : {"binomial", "hgs", "polya"}) {
    auto it = std::find_if(table.begin(), table.end(), [&](const ErrataEntry& e) { return e.family == f; });
    REQUIRE(it != table.end());
    CHECK(it->rows.front().printed_finite);
    CHECK_FALSE(it->rows.front().match);
  }
  for (const char* f : {"rbs", "pbps"}) {
    auto it = std::find_if(table.begin(), table.end(), [&](const ErrataEntry& e) { return e.family == f; });
    CHECK(it->non_real() > 0);
  }
  auto rbs = std::find_if(table.begin(), table.end(), [](const ErrataEntry& e) { return e.family == "rbs"; });
  CHECK(std::any_of(rbs->notes.begin(), rbs->notes.end(), [](const Erratum& x) { return x.paper_eq == "Eq. 22"; }));
  auto ps = std::find_if(table.begin(), table.end(), [](const ErrataEntry& e) { return e.family == "polya"; });
  auto note = std::find_if(ps->notes.begin(), ps->notes.end(), [](const Erratum& x) { return x.paper_eq == "Eq. 21"; });
  REQUIRE(note != ps->notes.end());
  CHECK(note->printed_residual > 1e-6);
  CHECK(note->corrected_residual < 1e-12);
  CHECK(errata_to_json(table).size() == 6);
}

TEST_CASE("equation coverage over the registry") {
  std::set<int> seen;
  for (const auto& e : acceptance_grid()) {
    const auto r = run_family_suite(e.family, e.params, e.dim);
    std::vector<std::string> labels = {r.structure_source};
    for (const auto& c : r.checks) labels.push_back(c.paper_eq);
    for (const auto& x : r.errata) labels.push_back(x.paper_eq);
    for (const auto& l : labels)
      for (int k : equation_numbers(l)) seen.insert(k);
  }
  std::vector<int> missing;
  for (int k = 1; k <= 86; ++k)
    if (k != 78 && !seen.count(k)) missing.push_back(k);
  std::string list;
  for (int k : missing) list += std::to_string(k) + " ";
  INFO("missing: " << list);
  CHECK(missing.empty());
}

TEST_CASE("label parser") {
  CHECK(equation_numbers("Eqs. 4-5") == std::set<int>{4, 5});
  CHECK(equation_numbers("Eqs. 9, 13") == std::set<int>{9, 13});
  CHECK(equation_numbers("Eq. 86") == std::set<int>{86});
}

TEST_CASE("registry and parameter resolution") {
  CHECK(family_registry().size() == 17);
  std::size_t suites = 0;
  for (const auto& f : family_registry()) suites += f.suite ? 1 : 0;
  CHECK(suites == 15);
  CHECK(family_info("ocs").name == "eocs");
  states::StateParams p;
  p.alpha = 1.1;
  CHECK(*resolve_params("ocs", p).parity == Parity::odd);
  CHECK_THROWS_AS(family_info("nope"), InputError);
  CHECK_THROWS_AS(resolve_params("binomial", states::StateParams{}), InputError);
  auto extra = bs(0.5, 4);
  extra.r = 1.0;
  CHECK_THROWS_AS(resolve_params("binomial", extra), InputError);
  CHECK_THROWS_AS(run_family_suite("harmonic", {}, 8), InputError);
  const auto j = params_to_json(p);
  CHECK(params_to_json(params_from_json(j)).dump() == j.dump());
  CHECK_THROWS_AS(params_from_json(json{{"bogus", 1}}), InputError);
  CHECK(default_dim("binomial", bs(0.5, 4)) == 12);
  states::StateParams nn = bs(0.3, 2);
  CHECK(default_dim("nnbs", nn) == 256);
}

TEST_CASE("grid manifest file mirrors the compiled grid") {
  std::ifstream in(FOCKGDO_SOURCE_DIR "/manifests/acceptance_grid.json");
  REQUIRE(in);
  CHECK(json::parse(in).dump() == grid_manifest().dump());
}

TEST_CASE("pmf oracles normalize") {
  double s = 0;
  for (long n = 0; n <= 5; ++n) s += pmf::polya(0.4, 0.7, 5, n);
  CHECK(s == doctest::Approx(1.0));
  s = 0;
  for (long n = 0; n < 200; ++n) s += pmf::photon_added_coherent(1.25, 2, n);
  CHECK(s == doctest::Approx(1.0));
  s = 0;
  for (long n = 0; n < 300; ++n) s += pmf::squeezed(0.8, 1, n);
  CHECK(s == doctest::Approx(1.0));
}
