#include "lpwan/format_util.hpp"

#include <cstdio>

namespace lpwan {

std::string format_g17(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

std::string format_fixed2(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.2f", value);
    return buffer;
}

} // namespace lpwan
