#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "intertwine/specfun.hpp"

namespace intertwine {

/// Parses "0.3", "0.3i", "-i", "0.1+0.3i", "1e-3-2e-2i". DomainError on
/// anything else.
Complex parse_complex(const std::string& text);

/// Formats as accepted by parse_complex, with 17 significant digits.
std::string format_complex(Complex z);

/// Entry point of the `intertwine` command. args excludes the program name.
/// Returns 0 when every check passed, 1 when one failed and 2 on a
/// configuration or input error (described as JSON on `err`).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Environment variable naming the directory for reports when --output is
/// not given.
inline constexpr const char* kOutputDirEnv = "INTERTWINE_OUTPUT_DIR";

}  // namespace intertwine
