#pragma once

#include <cmath>
#include <cstdint>

namespace geomstat {

// A double with an extended binary exponent: value = m * 2^e with
// 0.5 <= |m| < 1 (or m == 0). Products of thousands of pi-bar factors and
// their reciprocals leave the double range long before the final,
// well-scaled quantities are formed, so the sweep engines carry these
// instead of raw doubles.
struct ScaledReal {
    double m = 0.0;
    std::int64_t e = 0;

    ScaledReal() = default;

    static ScaledReal from(double v) {
        ScaledReal r;
        if (v == 0.0) return r;
        int ex;
        r.m = std::frexp(v, &ex);
        r.e = ex;
        return r;
    }

    static ScaledReal one() { return from(1.0); }

    void normalize() {
        if (m == 0.0) { e = 0; return; }
        int ex;
        m = std::frexp(m, &ex);
        e += ex;
    }

    ScaledReal operator*(const ScaledReal& o) const {
        ScaledReal r;
        r.m = m * o.m;
        r.e = e + o.e;
        r.normalize();
        return r;
    }

    ScaledReal operator/(const ScaledReal& o) const {
        ScaledReal r;
        r.m = m / o.m;
        r.e = e - o.e;
        r.normalize();
        return r;
    }

    ScaledReal operator+(const ScaledReal& o) const {
        if (m == 0.0) return o;
        if (o.m == 0.0) return *this;
        const ScaledReal *hi = this, *lo = &o;
        if (o.e > e) { hi = &o; lo = this; }
        std::int64_t shift = hi->e - lo->e;
        if (shift > 100) return *hi;
        ScaledReal r;
        r.m = hi->m + std::ldexp(lo->m, -int(shift));
        r.e = hi->e;
        r.normalize();
        return r;
    }

    ScaledReal& operator*=(const ScaledReal& o) { return *this = *this * o; }
    ScaledReal& operator+=(const ScaledReal& o) { return *this = *this + o; }

    double to_double() const {
        if (m == 0.0) return 0.0;
        if (e > 1023) return m > 0 ? HUGE_VAL : -HUGE_VAL;
        if (e < -1070) return 0.0;
        return std::ldexp(m, int(e));
    }
};

}  // namespace geomstat
