#pragma once
// Command-line front end: subcommands sop, moments, partition, verify,
// sweep. Exit codes: 0 success, 1 tolerance failure, 2 unknown flag,
// 3 missing or malformed parameter, 4 invalid family parameter.
#include <string>

#include "skewgas/dd.hpp"

namespace skewgas::cli {

// decimal string with a fixed count of significant digits (round half up);
// positional notation when the exponent is moderate, scientific otherwise
std::string dd_to_string(numeric::dd v, int digits);

int run(int argc, const char* const* argv);

}  // namespace skewgas::cli
