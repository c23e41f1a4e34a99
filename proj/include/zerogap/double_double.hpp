#pragma once

// Unevaluated sum of two doubles (about 32 significant digits).
//
// Arithmetic uses the usual error-free transformations (two-sum, FMA-based
// two-product); the accurate addition variant is used throughout. Values are
// kept normalized: |lo| <= ulp(hi)/2.

#include <cmath>

#include <quadmath.h>

namespace zerogap {

class DoubleDouble {
public:
    constexpr DoubleDouble() = default;
    constexpr DoubleDouble(double x) : hi_(x), lo_(0.0) {}
    constexpr DoubleDouble(int x) : hi_(static_cast<double>(x)), lo_(0.0) {}

    static DoubleDouble from_parts(double hi, double lo) {
        DoubleDouble r;
        r.hi_ = hi;
        r.lo_ = lo;
        return r;
    }

    static DoubleDouble from_quad(__float128 x) {
        const double hi = static_cast<double>(x);
        const double lo = static_cast<double>(x - static_cast<__float128>(hi));
        return quick_two_sum(hi, lo);
    }

    __float128 to_quad() const { return static_cast<__float128>(hi_) + static_cast<__float128>(lo_); }
    double to_double() const { return hi_ + lo_; }
    double hi() const { return hi_; }
    double lo() const { return lo_; }

    DoubleDouble operator-() const { return from_parts(-hi_, -lo_); }

    friend DoubleDouble operator+(const DoubleDouble& a, const DoubleDouble& b) {
        double s2;
        double t2;
        const double s1 = two_sum(a.hi_, b.hi_, s2);
        const double t1 = two_sum(a.lo_, b.lo_, t2);
        s2 += t1;
        double e;
        const double h = two_sum_quick(s1, s2, e);
        return quick_two_sum(h, e + t2);
    }
    friend DoubleDouble operator-(const DoubleDouble& a, const DoubleDouble& b) { return a + (-b); }

    friend DoubleDouble operator*(const DoubleDouble& a, const DoubleDouble& b) {
        const double p = a.hi_ * b.hi_;
        double e = std::fma(a.hi_, b.hi_, -p);
        e += a.hi_ * b.lo_ + a.lo_ * b.hi_;
        return quick_two_sum(p, e);
    }

    friend DoubleDouble operator/(const DoubleDouble& a, const DoubleDouble& b) {
        // Long division: two quotient digits plus a correction.
        const double q1 = a.hi_ / b.hi_;
        DoubleDouble r = a - b * DoubleDouble(q1);
        const double q2 = r.hi_ / b.hi_;
        r = r - b * DoubleDouble(q2);
        const double q3 = r.hi_ / b.hi_;
        return quick_two_sum(q1, q2) + DoubleDouble(q3);
    }

    DoubleDouble& operator+=(const DoubleDouble& o) { return *this = *this + o; }
    DoubleDouble& operator-=(const DoubleDouble& o) { return *this = *this - o; }
    DoubleDouble& operator*=(const DoubleDouble& o) { return *this = *this * o; }
    DoubleDouble& operator/=(const DoubleDouble& o) { return *this = *this / o; }

    friend bool operator==(const DoubleDouble& a, const DoubleDouble& b) { return a.hi_ == b.hi_ && a.lo_ == b.lo_; }
    friend bool operator<(const DoubleDouble& a, const DoubleDouble& b) {
        return a.hi_ < b.hi_ || (a.hi_ == b.hi_ && a.lo_ < b.lo_);
    }
    friend bool operator>(const DoubleDouble& a, const DoubleDouble& b) { return b < a; }

private:
    static double two_sum(double a, double b, double& err) {
        const double s = a + b;
        const double bb = s - a;
        err = (a - (s - bb)) + (b - bb);
        return s;
    }
    static double two_sum_quick(double a, double b, double& err) {
        const double s = a + b;
        err = b - (s - a);
        return s;
    }
    static DoubleDouble quick_two_sum(double a, double b) {
        double e;
        const double s = two_sum_quick(a, b, e);
        return from_parts(s, e);
    }

    double hi_ = 0.0;
    double lo_ = 0.0;
};

}  // namespace zerogap
