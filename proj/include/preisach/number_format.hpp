#pragma once

#include <cstdio>
#include <string>

namespace preisach {

/// Round-trip decimal form ("%.17g") used in every emitted CSV.
inline std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace preisach
