#include "zerogap/closed_forms.hpp"

#include <cmath>
#include <algorithm>
#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <mpfr.h>

#include "zerogap/errors.hpp"

namespace zerogap {
namespace {

// One row per term: "n | p(u) | trig", read as p(u) · trig / κ^n.
// trig ∈ {1, sin(ku), cos(ku), sin(k), cos(k), sin(kv), cos(kv)}, v = 1 - u.
constexpr std::string_view table_A = R"(
8  | -10                           | 1
6  | 2u - 2u^2 + u^3/3             | 1
4  | u^3/3 - u^4/4                 | 1
9  | 8                             | sin(ku)
8  | 10 - 8u                       | cos(ku)
7  | -4 + 10u - 4u^2               | sin(ku)
6  | 2u - 3u^2 + u^3               | cos(ku)
9  | -8                            | sin(k)
6  | -u^3/3                        | cos(k)
9  | 8                             | sin(kv)
8  | 8u                            | cos(kv)
7  | -4u^2                         | sin(kv)
6  | -u^3                          | cos(kv)
)";

constexpr std::string_view table_B = R"(
8  | 1 - 2u                        | 1
6  | -u^3/3 + u^4/6                | 1
4  | u^4/8 - u^5/12                | 1
8  | -1 + 2u                       | cos(ku)
7  | -u + 2u^2 - u^3/3             | sin(ku)
6  | u^2/2 - 2u^3/3 + u^4/6        | cos(ku)
7  | u^3/3                         | sin(k)
6  | -u^4/6                        | cos(k)
7  | -u^3/3                        | sin(kv)
6  | -u^4/6                        | cos(kv)
)";

constexpr std::string_view table_C = R"(
10 | -20                           | 1
8  | 2u - 2u^2                     | 1
6  | -u^4/6 + u^5/15               | 1
4  | u^5/20 - u^6/36               | 1
11 | 12                            | sin(ku)
10 | 20 - 12u                      | cos(ku)
9  | -6 + 20u - 6u^2               | sin(ku)
8  | 4u - 8u^2 + 2u^3              | cos(ku)
7  | u^2 - 4u^3/3 + u^4/3          | sin(ku)
11 | -12                           | sin(k)
7  | u^4/6                         | sin(k)
6  | -u^5/15                       | cos(k)
11 | 12                            | sin(kv)
10 | 12u                           | cos(kv)
9  | -6u^2                         | sin(kv)
8  | -2u^3                         | cos(kv)
7  | u^4/3                         | sin(kv)
)";

constexpr std::string_view table_F = R"(
10 | -66                                          | 1
8  | -11/3 + 8u - 8u^2 + 4u^3/3                   | 1
6  | 2u/3 - 2u^2/3 + 5u^3/6 - 2u^4/3 - u^5/60     | 1
4  | u^3/9 - u^4/8 + u^5/20 - u^6/72              | 1
11 | 84                                           | sin(ku)
10 | 66 - 84u                                     | cos(ku)
9  | -16 + 66u - 42u^2                            | sin(ku)
8  | 11/3 + 8u - 25u^2 + 38u^3/3                  | cos(ku)
7  | -4/3 + 11u/3 - 11u^3/3 + 11u^4/6             | sin(ku)
6  | 2u/3 - 7u^2/6 + u^3/2 + u^4/12 - u^5/12      | cos(ku)
11 | -84                                          | sin(k)
10 | 26                                           | cos(k)
8  | -4u^3/3                                      | cos(k)
7  | -2u^3/3 + u^4/3                              | sin(k)
6  | -u^4/12 + u^5/60                             | cos(k)
11 | 84                                           | sin(kv)
10 | -26 + 84u                                    | cos(kv)
9  | 26u - 42u^2                                  | sin(kv)
8  | 13u^2 - 38u^3/3                              | cos(kv)
7  | -11u^3/3 + 11u^4/6                           | sin(kv)
6  | -u^4/3 + u^5/12                              | cos(kv)
)";

constexpr std::string_view table_G = R"(
10 | -148                                         | 1
8  | -14/3 + 18u - 18u^2 + 3u^3                   | 1
6  | 2u/3 - u^2 + 11u^3/6 - 7u^4/6                | 1
4  | u^3/9 - u^4/12                               | 1
11 | 152                                          | sin(ku)
10 | 148 - 152u                                   | cos(ku)
9  | -40 + 148u - 76u^2                           | sin(ku)
8  | 14/3 + 22u - 56u^2 + 67u^3/3                 | cos(ku)
7  | -4/3 + 14u/3 + 2u^2 - 26u^3/3 + 10u^4/3      | sin(ku)
6  | 2u/3 - 4u^2/3 + u^3/2 + u^4/3 - u^5/6        | cos(ku)
11 | -152                                         | sin(k)
10 | 36                                           | cos(k)
8  | -3u^3                                        | cos(k)
7  | -u^3                                         | sin(k)
11 | 152                                          | sin(kv)
10 | -36 + 152u                                   | cos(kv)
9  | 36u - 76u^2                                  | sin(kv)
8  | 18u^2 - 67u^3/3                              | cos(kv)
7  | -5u^3 + 10u^4/3                              | sin(kv)
6  | -u^4/2 + u^5/6                               | cos(kv)
)";

constexpr std::string_view table_H = R"(
10 | 117                                          | 1
8  | -5/2 - 14u + 14u^2 - 7u^3/3                  | 1
6  | u/2 - u^2/2 - 7u^3/6 + 25u^4/24              | 1
4  | u^3/12 - u^4/16                              | 1
11 | -130                                         | sin(ku)
10 | -117 + 130u                                  | cos(ku)
9  | 38 - 117u + 65u^2                            | sin(ku)
8  | 5/2 - 24u + 89u^2/2 - 58u^3/3                | cos(ku)
7  | -1 + 5u/2 - 5u^2 + 7u^3 - 17u^4/6            | sin(ku)
6  | u/2 - 3u^2/4 + u^3/2 - 5u^4/12 + u^5/6       | cos(ku)
11 | 130                                          | sin(k)
10 | -31                                          | cos(k)
9  | -4                                           | sin(k)
8  | 7u^3/3                                       | cos(k)
7  | 5u^3/6 - u^4/4                               | sin(k)
6  | -u^3/6 + u^4/24                              | cos(k)
11 | -130                                         | sin(kv)
10 | 31 - 130u                                    | cos(kv)
9  | 4 - 31u + 65u^2                              | sin(kv)
8  | 4u - 31u^2/2 + 58u^3/3                       | cos(kv)
7  | -2u^2 + 13u^3/3 - 17u^4/6                    | sin(kv)
6  | -u^3/2 + 5u^4/12 - u^5/6                     | cos(kv)
)";

constexpr std::string_view table_I = R"(
10 | -35                                          | 1
8  | -1/2 + 5u - 4u^2 + 2u^3/3                    | 1
6  | 5u^3/12 - u^4/4 + u^5/40                     | 1
4  | -u^4/16 + u^5/20 - u^6/144                   | 1
11 | 32                                           | sin(ku)
10 | 35 - 32u                                     | cos(ku)
9  | -11 + 35u - 16u^2                            | sin(ku)
8  | 1/2 + 6u - 27u^2/2 + 14u^3/3                 | cos(ku)
7  | u/2 + u^2/2 - 13u^3/6 + 3u^4/4               | sin(ku)
6  | -u^2/4 + u^3/4 + u^4/24 - u^5/24             | cos(ku)
11 | -32                                          | sin(k)
10 | 5                                            | cos(k)
8  | -2u^3/3                                      | cos(k)
7  | -u^3/3 - u^4/12                              | sin(k)
6  | u^4/8 - u^5/40                               | cos(k)
11 | 32                                           | sin(kv)
10 | -5 + 32u                                     | cos(kv)
9  | 5u - 16u^2                                   | sin(kv)
8  | 5u^2/2 - 14u^3/3                             | cos(kv)
7  | -u^3/2 + 3u^4/4                              | sin(kv)
6  | u^5/24                                       | cos(kv)
)";

constexpr std::string_view table_J = R"(
10 | 63                                           | 1
8  | -1/2 - 6u + 7u^2 - 7u^3/6                    | 1
6  | -u^3/4 + u^4/8                               | 1
4  | -u^4/16 + u^5/24                             | 1
11 | -50                                          | sin(ku)
10 | -63 + 50u                                    | cos(ku)
9  | 20 - 63u + 25u^2                             | sin(ku)
8  | 1/2 - 14u + 49u^2/2 - 43u^3/6                | cos(ku)
7  | u/2 - 4u^2 + 14u^3/3 - 7u^4/6                | sin(ku)
6  | -u^2/4 + 7u^3/12 - 5u^4/12 + u^5/12          | cos(ku)
11 | 50                                           | sin(k)
10 | -5                                           | cos(k)
8  | 7u^3/6                                       | cos(k)
7  | u^4/4                                        | sin(k)
6  | u^4/24                                       | cos(k)
11 | -50                                          | sin(kv)
10 | 5 - 50u                                      | cos(kv)
9  | -5u + 25u^2                                  | sin(kv)
8  | -5u^2/2 + 43u^3/6                            | cos(kv)
7  | 5u^3/6 - 7u^4/6                              | sin(kv)
6  | u^4/6 - u^5/12                               | cos(kv)
)";

std::string_view trim_view(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<ClosedTerm> parse_table(std::string_view text) {
    std::vector<ClosedTerm> terms;
    while (!text.empty()) {
        const std::size_t nl = text.find('\n');
        const std::string_view line = trim_view(text.substr(0, nl));
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (line.empty()) continue;
        const std::size_t bar1 = line.find('|');
        const std::size_t bar2 = line.find('|', bar1 + 1);
        if (bar1 == std::string_view::npos || bar2 == std::string_view::npos) {
            throw TranscriptionError("malformed term row: " + std::string(line));
        }
        ClosedTerm t;
        t.kappa_pole = std::stoi(std::string(trim_view(line.substr(0, bar1))));
        t.poly = UPoly::parse(trim_view(line.substr(bar1 + 1, bar2 - bar1 - 1)));
        const std::string_view trig = trim_view(line.substr(bar2 + 1));
        if (trig == "1") {
            t.trig = Trig::none;
            t.arg = TrigArg::one;
        } else {
            if (trig.size() < 6) throw TranscriptionError("bad trig token: " + std::string(trig));
            const std::string_view fn = trig.substr(0, 3);
            const std::string_view arg = trig.substr(3);
            if (fn == "sin") {
                t.trig = Trig::sin;
            } else if (fn == "cos") {
                t.trig = Trig::cos;
            } else {
                throw TranscriptionError("bad trig token: " + std::string(trig));
            }
            if (arg == "(ku)") {
                t.arg = TrigArg::u;
            } else if (arg == "(k)") {
                t.arg = TrigArg::one;
            } else if (arg == "(kv)") {
                t.arg = TrigArg::one_minus_u;
            } else {
                throw TranscriptionError("bad trig argument: " + std::string(trig));
            }
        }
        terms.push_back(std::move(t));
    }
    return terms;
}

const std::array<std::vector<ClosedTerm>, 10>& all_tables() {
    static const std::array<std::vector<ClosedTerm>, 10> tables = {
        parse_table(table_A), parse_table(table_B), parse_table(table_C), {}, {},
        parse_table(table_F), parse_table(table_G), parse_table(table_H), parse_table(table_I),
        parse_table(table_J),
    };
    return tables;
}

bool delegates_to_A(Label l) { return l == Label::D || l == Label::E; }

quad to_quad(const mpq_class& q) {
    const quad num = strtoflt128(q.get_num().get_str().c_str(), nullptr);
    const quad den = strtoflt128(q.get_den().get_str().c_str(), nullptr);
    return num / den;
}

std::vector<quad> to_quad(const UPoly& p) {
    std::vector<quad> out;
    out.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) out.push_back(to_quad(c));
    return out;
}

quad horner(const std::vector<quad>& c, quad x) {
    quad acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

struct QuadTerm {
    int kappa_pole;
    std::vector<quad> poly;
    Trig trig;
    TrigArg arg;
};

const std::array<std::vector<QuadTerm>, 10>& quad_tables() {
    static const auto tables = [] {
        std::array<std::vector<QuadTerm>, 10> out;
        for (Label l : all_labels) {
            for (const auto& t : closed_terms(l)) {
                out[index_of(l)].push_back(QuadTerm{t.kappa_pole, to_quad(t.poly), t.trig, t.arg});
            }
        }
        return out;
    }();
    return tables;
}

// Series coefficients c_k(u), k = 0..series_order, in quad.
const std::array<std::vector<std::vector<quad>>, 10>& quad_series() {
    static const auto series = [] {
        std::array<std::vector<std::vector<quad>>, 10> out;
        for (Label l : all_labels) {
            if (delegates_to_A(l)) continue;
            const KappaSeries s = kappa_taylor(l, series_order);
            for (int k = 0; k <= series_order; ++k) out[index_of(l)].push_back(to_quad(s.coefficient(k)));
        }
        return out;
    }();
    return series;
}

struct TrigValues {
    std::array<quad, 3> sin;
    std::array<quad, 3> cos;
};

TrigValues trig_values(quad kappa, quad u) {
    TrigValues t;
    const std::array<quad, 3> args = {kappa * u, kappa, kappa * (1 - u)};
    for (std::size_t i = 0; i < 3; ++i) {
        t.sin[i] = sinq(args[i]);
        t.cos[i] = cosq(args[i]);
    }
    return t;
}

quad term_value(const QuadTerm& t, quad kappa, quad u, const TrigValues& tv) {
    quad trig = 1;
    const auto a = static_cast<std::size_t>(t.arg);
    if (t.trig == Trig::sin) trig = tv.sin[a];
    if (t.trig == Trig::cos) trig = tv.cos[a];
    quad kpow = 1;
    for (int i = 0; i < t.kappa_pole; ++i) kpow *= kappa;
    return horner(t.poly, u) * trig / kpow;
}

// Bits lost to cancellation in a sum with absolute-value sum `mass`.
double lost_bits(quad sum, quad mass) {
    if (mass == 0) return 0;
    if (sum == 0) return 1e9;
    return std::max(0.0, static_cast<double>(log2q(mass / fabsq(sum))));
}

class Mp {
public:
    explicit Mp(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
    ~Mp() { mpfr_clear(v_); }
    Mp(const Mp&) = delete;
    Mp& operator=(const Mp&) = delete;
    mpfr_ptr get() { return v_; }

private:
    mpfr_t v_;
};

// Exact conversion of a quad (113-bit significand) through three doubles.
void set_quad(mpfr_ptr out, quad x) {
    const double hi = static_cast<double>(x);
    const quad r1 = x - hi;
    const double mid = static_cast<double>(r1);
    const double lo = static_cast<double>(r1 - mid);
    mpfr_set_d(out, hi, MPFR_RNDN);
    mpfr_add_d(out, out, mid, MPFR_RNDN);
    mpfr_add_d(out, out, lo, MPFR_RNDN);
}

quad get_quad(mpfr_ptr x, mpfr_prec_t prec) {
    Mp rest(prec);
    const double hi = mpfr_get_d(x, MPFR_RNDN);
    mpfr_sub_d(rest.get(), x, hi, MPFR_RNDN);
    const double mid = mpfr_get_d(rest.get(), MPFR_RNDN);
    mpfr_sub_d(rest.get(), rest.get(), mid, MPFR_RNDN);
    const double lo = mpfr_get_d(rest.get(), MPFR_RNDN);
    return static_cast<quad>(hi) + static_cast<quad>(mid) + static_cast<quad>(lo);
}

// Direct sum at `prec` bits. Returns the value and the bits lost.
std::pair<quad, double> direct_mp(Label label, quad kappa, quad u, mpfr_prec_t prec) {
    Mp k(prec), uu(prec), arg(prec), trig(prec), poly(prec), term(prec), kp(prec), sum(prec), mass(prec), c(prec);
    set_quad(k.get(), kappa);
    set_quad(uu.get(), u);
    mpfr_set_zero(sum.get(), 1);
    mpfr_set_zero(mass.get(), 1);
    for (const auto& t : closed_terms(label)) {
        mpfr_set_zero(poly.get(), 1);
        const auto& coeffs = t.poly.coeffs();
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
            mpfr_mul(poly.get(), poly.get(), uu.get(), MPFR_RNDN);
            mpfr_set_q(c.get(), it->get_mpq_t(), MPFR_RNDN);
            mpfr_add(poly.get(), poly.get(), c.get(), MPFR_RNDN);
        }
        mpfr_set_ui(trig.get(), 1, MPFR_RNDN);
        if (t.trig != Trig::none) {
            switch (t.arg) {
                case TrigArg::u: mpfr_mul(arg.get(), k.get(), uu.get(), MPFR_RNDN); break;
                case TrigArg::one: mpfr_set(arg.get(), k.get(), MPFR_RNDN); break;
                case TrigArg::one_minus_u:
                    mpfr_ui_sub(arg.get(), 1, uu.get(), MPFR_RNDN);
                    mpfr_mul(arg.get(), arg.get(), k.get(), MPFR_RNDN);
                    break;
            }
            if (t.trig == Trig::sin) mpfr_sin(trig.get(), arg.get(), MPFR_RNDN);
            else mpfr_cos(trig.get(), arg.get(), MPFR_RNDN);
        }
        mpfr_pow_ui(kp.get(), k.get(), static_cast<unsigned long>(t.kappa_pole), MPFR_RNDN);
        mpfr_mul(term.get(), poly.get(), trig.get(), MPFR_RNDN);
        mpfr_div(term.get(), term.get(), kp.get(), MPFR_RNDN);
        mpfr_add(sum.get(), sum.get(), term.get(), MPFR_RNDN);
        mpfr_abs(term.get(), term.get(), MPFR_RNDN);
        mpfr_add(mass.get(), mass.get(), term.get(), MPFR_RNDN);
    }
    const quad value = get_quad(sum.get(), prec);
    const quad m = get_quad(mass.get(), prec);
    return {value, lost_bits(value, m)};
}

// Quad keeps 113 bits; past this many lost bits the sum is redone in MPFR.
constexpr double quad_loss_limit = 40;

quad direct_from_trig(Label label, quad kappa, quad u, const TrigValues& tv) {
    quad sum = 0;
    quad mass = 0;
    for (const auto& t : quad_tables()[index_of(label)]) {
        const quad v = term_value(t, kappa, u, tv);
        sum += v;
        mass += fabsq(v);
    }
    double lost = lost_bits(sum, mass);
    if (lost <= quad_loss_limit) return sum;
    // Retry with enough bits to keep 128 after cancellation.
    for (mpfr_prec_t prec = 256; prec <= 8192; prec *= 2) {
        if (prec < lost + 128) continue;
        const auto [value, loss] = direct_mp(label, kappa, u, prec);
        if (static_cast<double>(prec) - loss >= 128) return value;
        lost = loss;
    }
    return sum;
}

quad series_value(Label label, quad kappa, quad u) {
    const auto& c = quad_series()[index_of(label)];
    quad acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * kappa + horner(*it, u);
    return acc;
}

void check_u(double u) {
    if (!(u > 0.0 && u <= 1.0)) throw DomainError("closed forms require 0 < u <= 1, got u = " + std::to_string(u));
}

void check_kappa(double kappa) {
    if (!std::isfinite(kappa)) throw DomainError("kappa must be finite");
}

// mpq power series of sin/cos(κ·a(u)) up to κ^max_power.
void add_trig_series(std::map<int, UPoly>& acc, const ClosedTerm& t, int max_power) {
    const int n = t.kappa_pole;
    if (t.trig == Trig::none) {
        acc[-n] += t.poly;
        return;
    }
    UPoly a;
    switch (t.arg) {
        case TrigArg::u: a = UPoly::u(); break;
        case TrigArg::one: a = UPoly(mpq_class(1)); break;
        case TrigArg::one_minus_u: a = UPoly(mpq_class(1)) - UPoly::u(); break;
    }
    // Term m of the series is (-1)^j a^m κ^m / m!, m = 2j (cos) or 2j+1 (sin).
    UPoly apow(mpq_class(1));
    mpz_class fact = 1;
    for (int m = 0; m - n <= max_power; ++m) {
        if (m > 0) {
            apow = apow * a;
            fact *= m;
        }
        const bool even = (m % 2) == 0;
        if ((t.trig == Trig::cos) != even) continue;
        const int j = t.trig == Trig::cos ? m / 2 : (m - 1) / 2;
        mpq_class scale(j % 2 == 0 ? mpz_class(1) : mpz_class(-1), fact);
        scale.canonicalize();
        acc[m - n] += (t.poly * apow) * scale;
    }
}

}  // namespace

const std::vector<ClosedTerm>& closed_terms(Label label) { return all_tables()[index_of(label)]; }

const UPoly& KappaSeries::coefficient(int k) const {
    static const UPoly zero;
    if (k < 0 || k >= static_cast<int>(coeffs_.size())) return zero;
    return coeffs_[static_cast<std::size_t>(k)];
}

std::size_t KappaSeries::negative_nonzero_count() const {
    std::size_t n = 0;
    for (const auto& [k, p] : negative_) {
        if (!p.is_zero()) ++n;
    }
    return n;
}

KappaSeries expand_series(Label label, int order, bool check) {
    if (order < 0) throw DomainError("series order must be >= 0");
    std::map<int, UPoly> acc;
    const Label base = delegates_to_A(label) ? Label::A : label;
    for (const auto& t : closed_terms(base)) add_trig_series(acc, t, order);
    KappaSeries s;
    s.order_ = order;
    s.coeffs_.assign(static_cast<std::size_t>(order) + 1, UPoly{});
    const mpq_class factor = delegates_to_A(label) ? mpq_class(-1, 2) : mpq_class(1);
    for (auto& [k, p] : acc) {
        UPoly q = p * factor;
        if (k < 0) {
            s.negative_[k] = std::move(q);
        } else if (k <= order) {
            s.coeffs_[static_cast<std::size_t>(k)] = std::move(q);
        }
    }
    if (check && s.negative_nonzero_count() != 0) {
        const auto& [k, p] = *std::find_if(s.negative_.begin(), s.negative_.end(),
                                           [](const auto& kv) { return !kv.second.is_zero(); });
        throw TranscriptionError("label " + to_string(label) + ": coefficient of kappa^" + std::to_string(k) +
                                 " is " + p.to_string() + ", expected exact zero");
    }
    return s;
}

KappaSeries kappa_taylor(Label label, int order) { return expand_series(label, order, true); }

quad eval_direct(Label label, quad kappa, quad u) {
    if (delegates_to_A(label)) return -eval_direct(Label::A, kappa, u) / 2;
    return direct_from_trig(label, kappa, u, trig_values(kappa, u));
}

quad eval_series(Label label, quad kappa, quad u) {
    if (delegates_to_A(label)) return -series_value(Label::A, kappa, u) / 2;
    return series_value(label, kappa, u);
}

quad eval_quad(Label label, quad kappa, quad u) {
    check_kappa(static_cast<double>(kappa));
    check_u(static_cast<double>(u));
    if (fabsq(kappa) < kappa_switch) return eval_series(label, kappa, u);
    return eval_direct(label, kappa, u);
}

double eval(Label label, double kappa, double u) { return static_cast<double>(eval_quad(label, kappa, u)); }

std::array<quad, 10> eval_all_quad(quad kappa, quad u) {
    check_kappa(static_cast<double>(kappa));
    check_u(static_cast<double>(u));
    std::array<quad, 10> out{};
    const bool small = fabsq(kappa) < kappa_switch;
    const TrigValues tv = small ? TrigValues{} : trig_values(kappa, u);
    for (Label l : all_labels) {
        if (delegates_to_A(l)) continue;
        out[index_of(l)] = small ? series_value(l, kappa, u) : direct_from_trig(l, kappa, u, tv);
    }
    out[index_of(Label::D)] = -out[index_of(Label::A)] / 2;
    out[index_of(Label::E)] = -out[index_of(Label::A)] / 2;
    return out;
}

std::array<double, 10> eval_all(double kappa, double u) {
    const auto q = eval_all_quad(kappa, u);
    std::array<double, 10> out{};
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<double>(q[i]);
    return out;
}

std::vector<double> term_magnitudes(Label label, double kappa, double u) {
    check_u(u);
    const TrigValues tv = trig_values(kappa, u);
    std::vector<double> out;
    for (const auto& t : quad_tables()[index_of(label)]) {
        out.push_back(static_cast<double>(fabsq(term_value(t, kappa, u, tv))));
    }
    return out;
}

A3Result a3(std::uint64_t prime_limit) {
    if (prime_limit < 2) throw DomainError("prime limit must be >= 2");
    if (prime_limit > 4'000'000'000ULL) throw DomainError("prime limit above 4e9 is not supported");
    // Primes up to `sieve_limit` are handled exactly; the analytic tail
    // estimate is only used beyond it.
    constexpr std::uint64_t analytic_from = 30;
    const std::uint64_t sieve_limit = std::max(prime_limit, analytic_from);
    std::vector<bool> composite(sieve_limit + 1, false);
    quad product = 1;
    quad exact_tail_log = 0;  // Σ -log(factor) over prime_limit < p <= sieve_limit
    std::uint64_t count = 0;
    for (std::uint64_t p = 2; p <= sieve_limit; ++p) {
        if (composite[p]) continue;
        for (std::uint64_t q = p * p; q <= sieve_limit; q += p) composite[q] = true;
        // (1 + 4/p + 1/p²)(1 - 1/p)⁴ = 1 - 9x² + 16x³ - 9x⁴ + x⁶, x = 1/p
        const quad x = quad(1) / quad(p);
        const quad x2 = x * x;
        const quad factor = 1 + x2 * (-9 + x * (16 + x * (-9 + x2)));
        if (p <= prime_limit) {
            ++count;
            product *= factor;
        } else {
            exact_tail_log -= logq(factor);
        }
    }
    // For p > N ≥ 30 each factor is 1 - t with 0 < t < 9(1 + 1/N²)/p², and
    // Σ_{p>N} 1/p² < 8/N² + 8/(30N) since at most 8 residues mod 30 are
    // coprime to 30. With S bounding Σ -log(1 - t), a₃ lies in [P·e^{-S}, P].
    const double n = static_cast<double>(sieve_limit);
    const double recip_sq_sum = 8.0 / (n * n) + 8.0 / (30.0 * n);
    const double t_max = 9.0 * (1.0 + 1.0 / (n * n)) / ((n + 1) * (n + 1));
    const double s = 9.0 * (1.0 + 1.0 / (n * n)) / (1.0 - t_max) * recip_sq_sum + static_cast<double>(exact_tail_log);
    const double value = static_cast<double>(product);
    const double bound = value * (-std::expm1(-s)) + 1e-15 * value;
    return A3Result{value, bound, prime_limit, count};
}

}  // namespace zerogap
