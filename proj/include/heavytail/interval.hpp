#pragma once

#include <cmath>
#include <limits>

namespace heavytail {

/// Open interval (lo, hi); either endpoint may be infinite.
struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();

    static constexpr double inf() { return std::numeric_limits<double>::infinity(); }
    static Interval real_line() { return {-inf(), inf()}; }
    static Interval positive_half_line() { return {0.0, inf()}; }

    bool contains(double x) const { return x > lo && x < hi; }
    bool contains_closure(double x) const { return x >= lo && x <= hi; }
    bool lower_infinite() const { return std::isinf(lo); }
    bool upper_infinite() const { return std::isinf(hi); }
    bool bounded() const { return !lower_infinite() && !upper_infinite(); }
    bool is_real_line() const { return lower_infinite() && upper_infinite(); }
    bool is_positive_half_line() const { return lo == 0.0 && upper_infinite(); }
    bool covers(const Interval& other) const { return lo <= other.lo && hi >= other.hi; }
};

} // namespace heavytail
