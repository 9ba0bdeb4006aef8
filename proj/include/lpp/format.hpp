#pragma once

#include <cstdio>
#include <cstdlib>
#include <string>

namespace lpp {

// Floats are printed with 12 significant digits, '.' decimal separator,
// locale-independent. All emitted files share this formatting.
inline std::string fmt_g12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// Round through the 12-significant-digit text form, so JSON output carries
// the same values as CSV.
inline double round_12sig(double v) {
    return std::strtod(fmt_g12(v).c_str(), nullptr);
}

} // namespace lpp
