#pragma once

#include <cstdio>
#include <string>

namespace cea {

/// Round-trippable float formatting for JSON output: 17 significant digits,
/// identical bytes for identical values on every run.
inline std::string jnum(double x) {
    if (x == 0.0) return "0"; // collapse -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

/// 12 significant digits, used by CSV exports.
inline std::string cnum(double x) {
    if (x == 0.0) return "0";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

inline std::string jstr(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    out += '"';
    return out;
}

} // namespace cea
