#pragma once

#include <cmath>
#include <limits>

namespace pdem {

/// Open interval (lo, hi); either end may be infinite.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    [[nodiscard]] bool contains(double x) const { return x > lo && x < hi; }
    [[nodiscard]] double length() const { return hi - lo; }
    [[nodiscard]] double center() const { return 0.5 * (lo + hi); }
    [[nodiscard]] bool finite() const { return std::isfinite(lo) && std::isfinite(hi); }
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kPi = 3.14159265358979323846;

}  // namespace pdem
