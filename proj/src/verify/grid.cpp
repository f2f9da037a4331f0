#include "fockgdo/verify/grid.hpp"

#include <numbers>

#include "fockgdo/verify/suite.hpp"

namespace fockgdo::verify {

namespace {

GridEntry entry(std::string family, std::size_t dim, void (*fill)(states::StateParams&)) {
  GridEntry e{std::move(family), {}, dim};
  fill(e.params);
  return e;
}

}  // namespace

const std::vector<GridEntry>& acceptance_grid() {
  static const std::vector<GridEntry> grid = {
      entry("coherent", 64, [](states::StateParams& p) { p.alpha = 1.0; }),
      entry("binomial", 12, [](states::StateParams& p) { p.eta = 0.5; p.M = 4; }),
      entry("hgs", 13, [](states::StateParams& p) { p.L = 40.0; p.eta = 0.5; p.M = 5; }),
      entry("polya", 13, [](states::StateParams& p) { p.eta = 0.4; p.gamma = 0.7; p.M = 5; }),
      entry("rbs", 12, [](states::StateParams& p) { p.theta = 0.7; p.M = 4; }),
      entry("pbps", 15, [](states::StateParams& p) { p.theta0 = 0.0; p.m = 2; p.M = 7; }),
      entry("ggs", 14, [](states::StateParams& p) { p.Y = std::polar(0.3, std::numbers::pi / 3); p.M = 6; }),
      entry("geometric", 128, [](states::StateParams& p) { p.eta = 0.4; }),
      entry("nbs", 128, [](states::StateParams& p) { p.eta = 0.3; p.M = 3; }),
      entry("nnbs", 256, [](states::StateParams& p) { p.eta = 0.3; p.M = 2; }),
      entry("kerr", 64, [](states::StateParams& p) { p.alpha = 1.0; p.theta = 0.3; }),
      entry("pacs", 128, [](states::StateParams& p) { p.alpha = cplx(1.0, 0.5); p.M = 2; }),
      entry("svs", 128, [](states::StateParams& p) { p.r = 0.8; p.theta = 0.5; }),
      entry("sfes", 128, [](states::StateParams& p) { p.r = 0.8; p.theta = 0.5; }),
      entry("eocs", 64, [](states::StateParams& p) { p.alpha = 1.1; p.parity = Parity::even; }),
  };
  return grid;
}

json grid_manifest() {
  json entries = json::array();
  for (const auto& e : acceptance_grid())
    entries.push_back(json{{"family", e.family}, {"params", params_to_json(e.params)}, {"dim", e.dim}});
  return json{{"grid_version", kGridVersion}, {"entries", std::move(entries)}};
}

}  // namespace fockgdo::verify
