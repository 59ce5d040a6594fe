#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace isocurve {

/// Shortest decimal string that round-trips to the same double. Used for
/// expression printing and anywhere output must be bit-deterministic.
inline std::string formatDouble(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

} // namespace isocurve
