#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lpwan::cli {

// Full command-line entry point; argv[0] is not expected in `args`.
// Writes reports to `out` and diagnostics to `err`. Exit codes: 0 success,
// 2 configuration error, 3 input-data error, 4 numeric failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Convenience wrapper over the stream variant for main().
int run(int argc, const char* const* argv);

} // namespace lpwan::cli
