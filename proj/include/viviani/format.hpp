#pragma once

#include <array>
#include <charconv>
#include <cstdio>
#include <string>

#include "viviani/vector.hpp"

namespace viviani {

// Shortest decimal form that parses back to the same double.
inline std::string format_double(double v) {
    if (v == 0.0) v = 0.0;  // drop the sign of negative zero
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return {buf.data(), res.ptr};
}

inline std::string format_fixed(double v, int precision) {
    std::array<char, 64> buf{};
    const int n = std::snprintf(buf.data(), buf.size(), "%.*f", precision, v);
    std::string s(buf.data(), static_cast<std::size_t>(n));
    if (s.find_first_not_of("-0.") == std::string::npos) s = s.substr(s.front() == '-' ? 1 : 0);
    return s;
}

// "[a, b, c]" with shortest round-trip coordinates.
inline std::string format_vector(const VectorN& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.dim(); ++i) {
        if (i > 0) s += ", ";
        s += format_double(v[i]);
    }
    return s + "]";
}

}  // namespace viviani
