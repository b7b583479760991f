#pragma once

#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace netadopt {

// Sentinel for an unbounded threshold degree (prints as "inf").
inline constexpr int kDegreeInf = std::numeric_limits<int>::max();

/// Formats a real with 17 significant digits, enough to round-trip a double.
inline std::string format_real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

inline std::string format_degree(int d) {
    return d == kDegreeInf ? std::string("inf") : std::to_string(d);
}

inline std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string::size_type pos = 0;
    while (true) {
        auto next = s.find(sep, pos);
        if (next == std::string::npos) {
            out.push_back(s.substr(pos));
            break;
        }
        out.push_back(s.substr(pos, next - pos));
        pos = next + 1;
    }
    return out;
}

inline double parse_real(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(trim(s), &used);
        if (used != trim(s).size()) throw std::invalid_argument(what);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("invalid number for " + what + ": '" + s + "'");
    }
}

inline int parse_int(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(trim(s), &used);
        if (used != trim(s).size()) throw std::invalid_argument(what);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("invalid integer for " + what + ": '" + s + "'");
    }
}

}  // namespace netadopt
