#include "zerogap/upoly.hpp"

#include <cctype>
#include <stdexcept>

namespace zerogap {

UPoly::UPoly(const mpq_class& c) : coeffs_{c} { trim(); }

UPoly::UPoly(std::vector<mpq_class> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

UPoly UPoly::u() { return UPoly(std::vector<mpq_class>{0, 1}); }

void UPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

mpq_class UPoly::coeff(int power) const {
    if (power < 0 || power > degree()) return 0;
    return coeffs_[static_cast<std::size_t>(power)];
}

mpq_class UPoly::evaluate(const mpq_class& u) const {
    mpq_class acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * u + *it;
    return acc;
}

UPoly& UPoly::operator+=(const UPoly& o) {
    if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0);
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    trim();
    return *this;
}

UPoly& UPoly::operator-=(const UPoly& o) {
    if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0);
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    trim();
    return *this;
}

UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<mpq_class> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return UPoly(std::move(out));
}

UPoly operator*(UPoly a, const mpq_class& s) {
    for (auto& c : a.coeffs_) c *= s;
    a.trim();
    return a;
}

namespace {

[[noreturn]] void parse_fail(std::string_view text, const char* why) {
    throw std::invalid_argument("cannot parse polynomial '" + std::string(text) + "': " + why);
}

}  // namespace

// Grammar: term (('+' | '-') term)*, term = [int] ['u' ['^' int]] ['/' int],
// with a leading sign allowed. Whitespace is ignored.
UPoly UPoly::parse(std::string_view text) {
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    }
    if (s.empty()) parse_fail(text, "empty");
    std::size_t pos = 0;
    auto read_int = [&](mpz_class& out) {
        const std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) return false;
        out = mpz_class(s.substr(start, pos - start));
        return true;
    };
    UPoly result;
    bool first = true;
    while (pos < s.size()) {
        int sign = 1;
        if (s[pos] == '+' || s[pos] == '-') {
            sign = s[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (!first) {
            parse_fail(text, "expected '+' or '-'");
        }
        first = false;
        mpz_class num = 1;
        const bool has_num = read_int(num);
        mpz_class den = 1;
        bool has_den = false;
        auto read_den = [&] {
            if (pos < s.size() && s[pos] == '/') {
                ++pos;
                if (!read_int(den) || den == 0) parse_fail(text, "bad denominator");
                has_den = true;
            }
        };
        if (has_num) read_den();
        if (has_num && pos < s.size() && s[pos] == '*') {
            ++pos;
            if (pos >= s.size() || s[pos] != 'u') parse_fail(text, "expected 'u' after '*'");
        }
        int power = 0;
        if (pos < s.size() && s[pos] == 'u') {
            ++pos;
            power = 1;
            if (pos < s.size() && s[pos] == '^') {
                ++pos;
                mpz_class p;
                if (!read_int(p)) parse_fail(text, "missing exponent");
                power = static_cast<int>(p.get_si());
            }
        } else if (!has_num) {
            parse_fail(text, "empty term");
        }
        if (!has_den) read_den();
        std::vector<mpq_class> c(static_cast<std::size_t>(power) + 1, 0);
        c[static_cast<std::size_t>(power)] = mpq_class(num * sign, den);
        c[static_cast<std::size_t>(power)].canonicalize();
        result += UPoly(std::move(c));
    }
    return result;
}

std::string UPoly::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        const mpq_class& c = coeffs_[k];
        if (c == 0) continue;
        const bool negative = c < 0;
        const mpq_class mag = abs(c);
        if (out.empty()) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }
        if (k == 0) {
            out += mag.get_str();
            continue;
        }
        if (mag != 1) out += mag.get_str() + "*";
        out += "u";
        if (k > 1) out += "^" + std::to_string(k);
    }
    return out;
}

}  // namespace zerogap
