#pragma once

// Polynomials in u with exact rational coefficients.

#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace zerogap {

class UPoly {
public:
    UPoly() = default;
    explicit UPoly(const mpq_class& c);
    explicit UPoly(std::vector<mpq_class> coeffs);

    static UPoly u();

    // Parses sums like "-4 + 10u - 4u^2", "38u^3/3" or "11/3".
    static UPoly parse(std::string_view text);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<mpq_class>& coeffs() const { return coeffs_; }
    mpq_class coeff(int power) const;

    mpq_class evaluate(const mpq_class& u) const;

    UPoly& operator+=(const UPoly& o);
    UPoly& operator-=(const UPoly& o);
    friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
    friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
    friend UPoly operator*(const UPoly& a, const UPoly& b);
    friend UPoly operator*(UPoly a, const mpq_class& s);
    friend bool operator==(const UPoly& a, const UPoly& b) { return a.coeffs_ == b.coeffs_; }

    // e.g. "1/8640 - u/3 + 5/2*u^2"
    std::string to_string() const;

private:
    void trim();
    std::vector<mpq_class> coeffs_;  // coeffs_[k] multiplies u^k
};

}  // namespace zerogap
