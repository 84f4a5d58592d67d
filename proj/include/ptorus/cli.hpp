#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

namespace ptorus::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kIo = 2, kDomain = 3 };

/// Parse "RE,IM" (or a bare real "RE"). Throws std::invalid_argument.
std::complex<double> parse_complex(const std::string& text);

/// Entry point with explicit streams; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace ptorus::cli
