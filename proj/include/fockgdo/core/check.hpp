#pragma once

#include <string>

namespace fockgdo {

/// One named comparison: residual against tolerance, plus the truncation leak.
/// passed is true iff residual <= tolerance and leak <= leak_tolerance.
struct Check {
  std::string name;
  std::string paper_eq;
  double residual = 0.0;
  double tolerance = 1e-10;
  double leak = 0.0;
  double leak_tolerance = 1e-10;
  bool passed = false;
  std::string detail;
};

Check make_check(std::string name, std::string paper_eq, double residual, double tolerance, double leak,
                 double leak_tolerance, std::string detail = {});

}  // namespace fockgdo
