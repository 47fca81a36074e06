#pragma once

#include <charconv>
#include <string>

namespace gutkin {

/// Shortest decimal that round-trips; used in every CSV output.
inline std::string format_double(double v)
{
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace gutkin
