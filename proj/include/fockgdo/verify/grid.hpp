#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fockgdo/states/states.hpp"
#include "fockgdo/verify/report.hpp"

namespace fockgdo::verify {

struct GridEntry {
  std::string family;
  states::StateParams params;
  std::size_t dim = 0;
};

/// Fixed parameter points, one per registered suite family. Versioned with
/// the repository; manifests/acceptance_grid.json mirrors this list.
inline constexpr int kGridVersion = 1;
const std::vector<GridEntry>& acceptance_grid();

/// The grid as a batch manifest.
json grid_manifest();

}  // namespace fockgdo::verify
