#pragma once

#include <string>

namespace lpwan {

// Shortest %.17g rendering: round-trips every double, locale independent.
std::string format_g17(double value);

// Fixed two decimals, for human-readable year counts.
std::string format_fixed2(double value);

} // namespace lpwan
