#pragma once

#include <charconv>
#include <cmath>
#include <string>

namespace pho {

/// Shortest round-trip decimal form (at most 17 significant digits);
/// non-finite values become nan / inf / -inf.
inline std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

} // namespace pho
