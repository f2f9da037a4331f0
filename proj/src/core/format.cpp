#include "fockgdo/core/format.hpp"

#include <cmath>
#include <cstdio>

namespace fockgdo {

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_complex(std::complex<double> z) {
  std::string s = format_real(z.real());
  const double im = z.imag();
  if (std::signbit(im))
    s += "-" + format_real(-im);
  else
    s += "+" + format_real(im);
  return s + "i";
}

}  // namespace fockgdo
