#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

namespace fockgdo::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailure = 1;
inline constexpr int kExitInputError = 2;

/// Complex literal: "1.5", "2i", "-i", "1+0.5i", "1-2e-3i", or polar "r@phi".
/// Throws InputError naming the offending text.
std::complex<double> parse_complex(const std::string& text);

/// Strict real parse (whole string consumed, finite). `what` names the flag in the diagnostic.
double parse_real(const std::string& text, const std::string& what);
int parse_int(const std::string& text, const std::string& what);

/// Runs one invocation. args excludes the program name. Returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fockgdo::cli
