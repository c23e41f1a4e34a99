#pragma once

// Real scalar types used by the library and a minimal complex type over them.
//
// std::complex<T> is only specified for the standard floating types, so the
// jet algebra carries its own small complex struct that works for double and
// for the extended type below.

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>

#include <quadmath.h>

#include "zerogap/double_double.hpp"

namespace zerogap {

using quad = __float128;

enum class Precision { standard, extended };

std::string to_string(Precision p);
Precision parse_precision(const std::string& text);

namespace math {

inline double sin(double x) { return std::sin(x); }
inline double cos(double x) { return std::cos(x); }
inline double exp(double x) { return std::exp(x); }
inline double abs(double x) { return std::fabs(x); }

inline quad sin(quad x) { return sinq(x); }
inline quad cos(quad x) { return cosq(x); }
inline quad exp(quad x) { return expq(x); }
inline quad abs(quad x) { return fabsq(x); }

// Transcendentals for double-double go through quad, which carries more
// bits than a double-double significand.
inline DoubleDouble sin(const DoubleDouble& x) { return DoubleDouble::from_quad(sinq(x.to_quad())); }
inline DoubleDouble cos(const DoubleDouble& x) { return DoubleDouble::from_quad(cosq(x.to_quad())); }
inline DoubleDouble exp(const DoubleDouble& x) { return DoubleDouble::from_quad(expq(x.to_quad())); }
inline DoubleDouble abs(const DoubleDouble& x) { return x.hi() < 0 ? -x : x; }

template <class Real>
Real from_double(double x) {
    return Real(x);
}

inline double to_double(double x) { return x; }
inline double to_double(quad x) { return static_cast<double>(x); }
inline double to_double(const DoubleDouble& x) { return x.to_double(); }

}  // namespace math

template <class Real>
struct Complex {
    Real re{};
    Real im{};

    constexpr Complex() = default;
    constexpr Complex(Real r) : re(r), im(0) {}
    constexpr Complex(Real r, Real i) : re(r), im(i) {}

    static Complex from(std::complex<double> z) { return {Real(z.real()), Real(z.imag())}; }
    std::complex<double> to_std() const { return {math::to_double(re), math::to_double(im)}; }

    bool is_zero() const { return re == Real(0) && im == Real(0); }

    Complex& operator+=(const Complex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Complex& operator-=(const Complex& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    Complex& operator*=(const Complex& o) {
        *this = *this * o;
        return *this;
    }

    friend Complex operator+(Complex a, const Complex& b) { return a += b; }
    friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
    friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator*(const Complex& a, const Real& s) { return {a.re * s, a.im * s}; }
    friend Complex operator/(const Complex& a, const Complex& b) {
        const Real d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }

    Complex conj() const { return {re, -im}; }
    Real norm1() const { return math::abs(re) + math::abs(im); }
};

template <class Real>
Complex<Real> complex_exp(const Complex<Real>& z) {
    const Real m = math::exp(z.re);
    return {m * math::cos(z.im), m * math::sin(z.im)};
}

// Scalar used by each precision mode of the oracle.
template <Precision P>
struct oracle_scalar;
template <>
struct oracle_scalar<Precision::standard> {
    using type = double;
};
template <>
struct oracle_scalar<Precision::extended> {
    using type = DoubleDouble;
};

}  // namespace zerogap
