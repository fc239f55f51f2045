#pragma once

#include <cstdio>
#include <string>

namespace rydspec::io {

// Shortest round-trip decimal form of a double, locale-independent
// ('.' decimal point regardless of the ambient locale).
inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    // %g may honor the C locale's decimal point; normalize defensively.
    for (char& ch : buf) {
        if (ch == '\0')
            break;
        if (ch == ',')
            ch = '.';
    }
    return buf;
}

} // namespace rydspec::io
