#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ace {

/// Closed real interval [lo, hi]. The carrier for every bound the library
/// propagates. Degenerate intervals (lo == hi) represent exact values.
/// Infinite endpoints are reserved for "unknown" sentinels and never appear
/// in propagation outputs.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    Interval() = default;
    Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
        if (!(lo <= hi)) {
            // Tolerate last-ulp inversions from endpoint arithmetic; anything
            // larger is a caller bug.
            if (lo - hi < 1e-12) {
                std::swap(lo, hi);
            } else {
                throw std::invalid_argument("Interval: lo > hi");
            }
        }
    }

    static Interval exact(double v) { return Interval(v, v); }

    double width() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
    bool contains(double v) const { return lo <= v && v <= hi; }
    bool contains(const Interval& other) const {
        return lo <= other.lo && other.hi <= hi;
    }
    bool is_degenerate() const { return lo == hi; }

    friend bool operator==(const Interval& a, const Interval& b) {
        return a.lo == b.lo && a.hi == b.hi;
    }
};

inline Interval add(const Interval& a, const Interval& b) {
    return Interval(a.lo + b.lo, a.hi + b.hi);
}

inline Interval sub(const Interval& a, const Interval& b) {
    return Interval(a.lo - b.hi, a.hi - b.lo);
}

inline Interval negate(const Interval& a) { return Interval(-a.hi, -a.lo); }

inline Interval shift(const Interval& a, double c) {
    return Interval(a.lo + c, a.hi + c);
}

inline Interval hull(const Interval& a, const Interval& b) {
    return Interval(std::min(a.lo, b.lo), std::max(a.hi, b.hi));
}

inline double width(const Interval& a) { return a.width(); }

inline bool contains(const Interval& a, double v) { return a.contains(v); }

/// Extends a scalar function that is monotone on [x.lo, x.hi] to the
/// interval. Monotonicity in the stated direction is the caller's contract.
template <typename F>
Interval map_monotone(F&& f, const Interval& x, bool increasing = true) {
    const double a = f(x.lo);
    const double b = f(x.hi);
    return increasing ? Interval(a, b) : Interval(b, a);
}

/// Interval of |x| for x in the input. Degenerates to [0, max|.|] when the
/// input straddles zero.
inline Interval abs_interval(const Interval& x) {
    const double alo = std::abs(x.lo);
    const double ahi = std::abs(x.hi);
    if (x.lo <= 0.0 && x.hi >= 0.0) return Interval(0.0, std::max(alo, ahi));
    return Interval(std::min(alo, ahi), std::max(alo, ahi));
}

}  // namespace ace
