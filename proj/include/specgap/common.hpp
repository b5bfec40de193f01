#pragma once

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace specgap {

// All user-facing numeric output goes through this: 17 significant digits
// round-trips any double exactly, so identical runs produce identical files.
inline std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

struct SpecgapError : std::runtime_error {
    explicit SpecgapError(const std::string& what) : std::runtime_error(what) {}
};

inline bool rel_close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

constexpr double kPi = 3.14159265358979323846;

} // namespace specgap
