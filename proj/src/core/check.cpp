#include "fockgdo/core/check.hpp"

#include <cmath>

namespace fockgdo {

Check make_check(std::string name, std::string paper_eq, double residual, double tolerance, double leak,
                 double leak_tolerance, std::string detail) {
  Check c;
  c.name = std::move(name);
  c.paper_eq = std::move(paper_eq);
  c.residual = residual;
  c.tolerance = tolerance;
  c.leak = leak;
  c.leak_tolerance = leak_tolerance;
  // NaN residuals fail both comparisons.
  c.passed = residual <= tolerance && leak <= leak_tolerance;
  c.detail = std::move(detail);
  return c;
}

}  // namespace fockgdo
