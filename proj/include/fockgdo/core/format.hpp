#pragma once

#include <complex>
#include <string>

namespace fockgdo {

/// %.17g rendering (17 significant digits), enough to round-trip a double.
std::string format_real(double x);

/// a+bi / a-bi with both parts rendered by format_real.
std::string format_complex(std::complex<double> z);

}  // namespace fockgdo
