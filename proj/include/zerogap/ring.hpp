#pragma once

// Truncated algebra C[λ, 1/λ] ⊗ C[L, 1/L] ⊗ Λ(ε₁, ε₂).
//
// λ is the auxiliary regularizer of the shift specialization, L stands for
// log T, and ε₁, ε₂ are square-zero generators used to read off first
// derivatives with respect to individual shifts. An element is stored as a
// list of slices, one per (ε-mask, L-power) pair, each slice being a dense
// Laurent polynomial in λ.
//
// Truncation rules: λ- and L-powers above the window are dropped silently;
// anything that would land below the window throws, so information is never
// lost at the low end.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "zerogap/scalar.hpp"

namespace zerogap {

enum class EpsMask : std::uint8_t { none = 0, e1 = 1, e2 = 2, e12 = 3 };

inline constexpr bool masks_disjoint(EpsMask a, EpsMask b) {
    return (static_cast<unsigned>(a) & static_cast<unsigned>(b)) == 0U;
}
inline constexpr EpsMask mask_union(EpsMask a, EpsMask b) {
    return static_cast<EpsMask>(static_cast<unsigned>(a) | static_cast<unsigned>(b));
}

struct Window {
    int lambda_min = -12;
    int lambda_max = 12;
    int log_min = -6;
    int log_max = 14;

    static Window intersect(const Window& a, const Window& b) {
        return {std::max(a.lambda_min, b.lambda_min), std::min(a.lambda_max, b.lambda_max),
                std::max(a.log_min, b.log_min), std::min(a.log_max, b.log_max)};
    }
    bool contains(int lambda_power, int log_power) const {
        return lambda_power >= lambda_min && lambda_power <= lambda_max && log_power >= log_min &&
               log_power <= log_max;
    }
    friend bool operator==(const Window&, const Window&) = default;
};

class JetError : public std::runtime_error {
public:
    enum class Kind { window_underflow, division_by_zero, unsupported_divisor, unsupported_exponent, out_of_window };

    JetError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

template <class Real>
class Jet {
public:
    using scalar_type = Complex<Real>;

    struct Slice {
        int log_power = 0;
        EpsMask mask = EpsMask::none;
        int lo = 0;  // λ-power of coeffs[0]
        std::vector<scalar_type> coeffs;

        int hi() const { return lo + static_cast<int>(coeffs.size()) - 1; }
    };

    explicit Jet(Window window = {}) : window_(window) {}

    static Jet monomial(const Window& window, scalar_type c, int lambda_power, int log_power,
                        EpsMask mask = EpsMask::none) {
        Jet j(window);
        if (!window.contains(lambda_power, log_power)) {
            if (lambda_power < window.lambda_min || log_power < window.log_min) {
                throw JetError(JetError::Kind::window_underflow, "monomial below truncation window");
            }
            return j;
        }
        if (!c.is_zero()) j.slices_.push_back(Slice{log_power, mask, lambda_power, {c}});
        return j;
    }
    static Jet constant(const Window& window, scalar_type c) { return monomial(window, c, 0, 0); }
    static Jet one(const Window& window) { return constant(window, scalar_type(Real(1))); }

    const Window& window() const { return window_; }
    const std::vector<Slice>& slices() const { return slices_; }

    // Structural zero: no stored nonzero coefficient.
    bool is_zero() const { return slices_.empty(); }

    scalar_type coefficient(int lambda_power, int log_power, EpsMask mask = EpsMask::none) const {
        if (!window_.contains(lambda_power, log_power)) {
            throw JetError(JetError::Kind::out_of_window, "coefficient index outside truncation window");
        }
        for (const auto& s : slices_) {
            if (s.log_power == log_power && s.mask == mask) {
                if (lambda_power < s.lo || lambda_power > s.hi()) return {};
                return s.coeffs[static_cast<std::size_t>(lambda_power - s.lo)];
            }
        }
        return {};
    }

    // Lowest λ-power carrying a nonzero coefficient (any L, any mask).
    int lambda_valuation() const {
        int v = window_.lambda_max + 1;
        for (const auto& s : slices_) v = std::min(v, s.lo);
        return v;
    }

    // Coefficient of the given ε-monomial, as an ε-free element.
    Jet component(EpsMask mask) const {
        Jet r(window_);
        for (const auto& s : slices_) {
            if (s.mask == mask) {
                Slice c = s;
                c.mask = EpsMask::none;
                r.slices_.push_back(std::move(c));
            }
        }
        return r;
    }

    // Multiply an ε-free element by the ε-monomial `mask`.
    Jet attach(EpsMask mask) const {
        Jet r(window_);
        for (const auto& s : slices_) {
            if (s.mask != EpsMask::none) {
                throw std::logic_error("Jet::attach requires an epsilon-free element");
            }
            Slice c = s;
            c.mask = mask;
            r.slices_.push_back(std::move(c));
        }
        r.normalize_order();
        return r;
    }

    Jet conj() const {
        Jet r = *this;
        for (auto& s : r.slices_) {
            for (auto& c : s.coeffs) c = c.conj();
        }
        return r;
    }

    Jet operator-() const {
        Jet r = *this;
        for (auto& s : r.slices_) {
            for (auto& c : s.coeffs) c = -c;
        }
        return r;
    }

    Jet scaled(const scalar_type& f) const {
        if (f.is_zero()) return Jet(window_);
        Jet r = *this;
        for (auto& s : r.slices_) {
            for (auto& c : s.coeffs) c = c * f;
        }
        r.prune();
        return r;
    }

    friend Jet operator+(const Jet& a, const Jet& b) { return add(a, b, false); }
    friend Jet operator-(const Jet& a, const Jet& b) { return add(a, b, true); }
    friend Jet operator*(const Jet& a, const Jet& b) { return multiply(a, b); }
    friend Jet operator*(const Jet& a, const scalar_type& f) { return a.scaled(f); }
    friend Jet operator*(const scalar_type& f, const Jet& a) { return a.scaled(f); }
    Jet& operator+=(const Jet& o) { return *this = *this + o; }
    Jet& operator-=(const Jet& o) { return *this = *this - o; }
    Jet& operator*=(const Jet& o) { return *this = *this * o; }

    // Largest coefficient-wise |a - b| (1-norm of complex parts) on the
    // shared window.
    friend Real max_abs_difference(const Jet& a, const Jet& b) {
        const Jet d = a - b;
        Real m(0);
        for (const auto& s : d.slices_) {
            for (const auto& c : s.coeffs) {
                const Real x = c.norm1();
                if (m < x) m = x;
            }
        }
        return m;
    }

    Real max_abs_coefficient() const {
        Real m(0);
        for (const auto& s : slices_) {
            for (const auto& c : s.coeffs) {
                const Real x = c.norm1();
                if (m < x) m = x;
            }
        }
        return m;
    }

    friend Jet inverse(const Jet& a) { return a.inverse_impl(); }
    friend Jet exp(const Jet& a) { return a.exp_impl(); }

private:
    static int slice_index(const Window& w, EpsMask mask, int log_power) {
        return static_cast<int>(mask) * (w.log_max - w.log_min + 1) + (log_power - w.log_min);
    }
    static int slice_count(const Window& w) { return 4 * (w.log_max - w.log_min + 1); }
    static int lambda_count(const Window& w) { return w.lambda_max - w.lambda_min + 1; }

    // Dense accumulator over the window, used by add and multiply.
    struct Accumulator {
        Window w;
        std::vector<std::vector<scalar_type>> rows;

        explicit Accumulator(const Window& window) : w(window), rows(static_cast<std::size_t>(slice_count(window))) {}

        scalar_type* row(EpsMask mask, int log_power) {
            auto& r = rows[static_cast<std::size_t>(slice_index(w, mask, log_power))];
            if (r.empty()) r.assign(static_cast<std::size_t>(lambda_count(w)), scalar_type{});
            return r.data();
        }

        Jet finish() {
            Jet out(w);
            const int n_log = w.log_max - w.log_min + 1;
            for (int m = 0; m < 4; ++m) {
                for (int l = 0; l < n_log; ++l) {
                    auto& r = rows[static_cast<std::size_t>(m * n_log + l)];
                    if (r.empty()) continue;
                    std::size_t first = 0;
                    std::size_t last = r.size();
                    while (first < last && r[first].is_zero()) ++first;
                    while (last > first && r[last - 1].is_zero()) --last;
                    if (first == last) continue;
                    Slice s;
                    s.log_power = w.log_min + l;
                    s.mask = static_cast<EpsMask>(m);
                    s.lo = w.lambda_min + static_cast<int>(first);
                    s.coeffs.assign(r.begin() + static_cast<std::ptrdiff_t>(first),
                                    r.begin() + static_cast<std::ptrdiff_t>(last));
                    out.slices_.push_back(std::move(s));
                }
            }
            return out;
        }
    };

    static Jet add(const Jet& a, const Jet& b, bool subtract) {
        const Window w = Window::intersect(a.window_, b.window_);
        Accumulator acc(w);
        auto deposit = [&](const Jet& src, bool negate) {
            for (const auto& s : src.slices_) {
                if (s.log_power > w.log_max) continue;
                if (s.log_power < w.log_min) {
                    throw JetError(JetError::Kind::window_underflow, "L-power below window in addition");
                }
                if (s.lo < w.lambda_min) {
                    throw JetError(JetError::Kind::window_underflow, "lambda-power below window in addition");
                }
                scalar_type* row = acc.row(s.mask, s.log_power);
                for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
                    const int p = s.lo + static_cast<int>(i);
                    if (p > w.lambda_max) break;
                    auto& dst = row[p - w.lambda_min];
                    if (negate) {
                        dst -= s.coeffs[i];
                    } else {
                        dst += s.coeffs[i];
                    }
                }
            }
        };
        deposit(a, false);
        deposit(b, subtract);
        return acc.finish();
    }

    static Jet multiply(const Jet& a, const Jet& b) {
        const Window w = Window::intersect(a.window_, b.window_);
        if (a.is_zero() || b.is_zero()) return Jet(w);
        Accumulator acc(w);
        for (const auto& sa : a.slices_) {
            for (const auto& sb : b.slices_) {
                if (!masks_disjoint(sa.mask, sb.mask)) continue;
                const int log_power = sa.log_power + sb.log_power;
                if (log_power > w.log_max) continue;
                if (log_power < w.log_min) {
                    throw JetError(JetError::Kind::window_underflow,
                                   "product L-power " + std::to_string(log_power) + " below window");
                }
                const int lo = sa.lo + sb.lo;
                if (lo < w.lambda_min) {
                    throw JetError(JetError::Kind::window_underflow,
                                   "product lambda-power " + std::to_string(lo) +
                                       " below truncation window; enlarge lambda_min");
                }
                if (lo > w.lambda_max) continue;
                scalar_type* row = acc.row(mask_union(sa.mask, sb.mask), log_power) + (lo - w.lambda_min);
                const int room = w.lambda_max - lo;  // highest offset kept
                const int na = static_cast<int>(sa.coeffs.size());
                const int nb = static_cast<int>(sb.coeffs.size());
                for (int i = 0; i < na && i <= room; ++i) {
                    const scalar_type x = sa.coeffs[static_cast<std::size_t>(i)];
                    const int jmax = std::min(nb - 1, room - i);
                    scalar_type* out = row + i;
                    for (int j = 0; j <= jmax; ++j) {
                        out[j] += x * sb.coeffs[static_cast<std::size_t>(j)];
                    }
                }
            }
        }
        return acc.finish();
    }

    void prune() {
        std::vector<Slice> kept;
        kept.reserve(slices_.size());
        for (auto& s : slices_) {
            std::size_t first = 0;
            std::size_t last = s.coeffs.size();
            while (first < last && s.coeffs[first].is_zero()) ++first;
            while (last > first && s.coeffs[last - 1].is_zero()) --last;
            if (first == last) continue;
            Slice t;
            t.log_power = s.log_power;
            t.mask = s.mask;
            t.lo = s.lo + static_cast<int>(first);
            t.coeffs.assign(s.coeffs.begin() + static_cast<std::ptrdiff_t>(first),
                            s.coeffs.begin() + static_cast<std::ptrdiff_t>(last));
            kept.push_back(std::move(t));
        }
        slices_ = std::move(kept);
    }

    void normalize_order() {
        std::sort(slices_.begin(), slices_.end(), [](const Slice& x, const Slice& y) {
            return std::pair(static_cast<int>(x.mask), x.log_power) < std::pair(static_cast<int>(y.mask), y.log_power);
        });
    }

    // Inverse of an ε-free element whose lowest λ-order part is a single
    // monomial c·λ^v·L^k.
    Jet inverse_eps_free() const {
        if (is_zero()) throw JetError(JetError::Kind::division_by_zero, "inverse of zero");
        const int v = lambda_valuation();
        const Slice* lead = nullptr;
        for (const auto& s : slices_) {
            if (s.lo == v) {
                if (lead != nullptr) {
                    throw JetError(JetError::Kind::unsupported_divisor,
                                   "leading lambda-order part is not a single L-monomial");
                }
                lead = &s;
            }
        }
        const int k = lead->log_power;
        const int out_lo = -v;
        const int out_log = -k;
        if (out_lo < window_.lambda_min || out_log < window_.log_min) {
            throw JetError(JetError::Kind::window_underflow, "inverse leading term below truncation window");
        }
        if (out_log > window_.log_max || out_lo > window_.lambda_max) return Jet(window_);
        const scalar_type c = lead->coeffs.front();
        const scalar_type c_inv = scalar_type(Real(1)) / c;

        if (slices_.size() == 1) {
            // Univariate series division: q₀ = 1/c, qₙ = -(1/c)·Σ aᵢ qₙ₋ᵢ.
            const auto& a = lead->coeffs;
            const int n = window_.lambda_max - out_lo + 1;
            std::vector<scalar_type> q(static_cast<std::size_t>(n));
            q[0] = c_inv;
            for (int m = 1; m < n; ++m) {
                scalar_type acc{};
                const int imax = std::min(m, static_cast<int>(a.size()) - 1);
                for (int i = 1; i <= imax; ++i) acc += a[static_cast<std::size_t>(i)] * q[static_cast<std::size_t>(m - i)];
                q[static_cast<std::size_t>(m)] = -(acc * c_inv);
            }
            Jet r(window_);
            r.slices_.push_back(Slice{out_log, EpsMask::none, out_lo, std::move(q)});
            r.prune();
            return r;
        }

        // General case: a = c·λ^v·L^k·(1 + r) with r of positive λ-order.
        const Jet lead_inv = monomial(window_, c_inv, out_lo, out_log);
        Jet r = multiply(*this, lead_inv);
        r = add(r, one(window_), true);
        Jet term = one(window_);
        Jet sum = one(window_);
        const Jet minus_r = -r;
        const int cap = window_.lambda_max - window_.lambda_min + 2;
        for (int it = 0; it < cap; ++it) {
            term = multiply(term, minus_r);
            if (term.is_zero()) break;
            sum = add(sum, term, false);
        }
        return multiply(sum, lead_inv);
    }

    Jet inverse_impl() const {
        if (is_zero()) throw JetError(JetError::Kind::division_by_zero, "inverse of zero");
        const Jet b0 = component(EpsMask::none);
        if (b0.is_zero()) {
            throw JetError(JetError::Kind::division_by_zero, "inverse of a nilpotent element");
        }
        const Jet q = b0.inverse_eps_free();
        const Jet b1 = component(EpsMask::e1);
        const Jet b2 = component(EpsMask::e2);
        const Jet b12 = component(EpsMask::e12);
        if (b1.is_zero() && b2.is_zero() && b12.is_zero()) return q;
        // (b0 + b1ε₁ + b2ε₂ + b12ε₁ε₂)⁻¹ = q - q²b1ε₁ - q²b2ε₂ + (2q³b1b2 - q²b12)ε₁ε₂
        const Jet q2 = multiply(q, q);
        Jet out = q;
        if (!b1.is_zero()) out = add(out, multiply(q2, b1).attach(EpsMask::e1), true);
        if (!b2.is_zero()) out = add(out, multiply(q2, b2).attach(EpsMask::e2), true);
        Jet mixed(window_);
        if (!b1.is_zero() && !b2.is_zero()) {
            mixed = multiply(multiply(q2, q), multiply(b1, b2)).scaled(scalar_type(Real(2)));
        }
        if (!b12.is_zero()) mixed = add(mixed, multiply(q2, b12), true);
        if (!mixed.is_zero()) out = add(out, mixed.attach(EpsMask::e12), false);
        return out;
    }

    // exp of an ε-free element of non-negative λ-order whose λ⁰ part is a
    // pure constant.
    Jet exp_eps_free() const {
        for (const auto& s : slices_) {
            if (s.lo < 0 || (s.lo == 0 && s.log_power != 0)) {
                throw JetError(JetError::Kind::unsupported_exponent,
                               "exponent has residual L-dependence or a lambda pole");
            }
        }
        const scalar_type c0 = coefficient(0, 0);
        const scalar_type scale = complex_exp(c0);
        Jet rest = add(*this, constant(window_, c0), true);
        if (rest.is_zero()) return constant(window_, scale);

        if (rest.slices_.size() == 1 && rest.slices_.front().log_power == 0) {
            // f = exp(g), g(0) = 0: n·fₙ = Σ_{k=1..n} k·gₖ·fₙ₋ₖ.
            const Slice& g = rest.slices_.front();
            const int n = window_.lambda_max + 1;
            std::vector<scalar_type> gk(static_cast<std::size_t>(n));
            for (std::size_t i = 0; i < g.coeffs.size(); ++i) {
                const int p = g.lo + static_cast<int>(i);
                if (p < n) gk[static_cast<std::size_t>(p)] = g.coeffs[i];
            }
            std::vector<scalar_type> f(static_cast<std::size_t>(n));
            f[0] = scale;
            for (int m = 1; m < n; ++m) {
                scalar_type acc{};
                for (int k = 1; k <= m; ++k) {
                    acc += gk[static_cast<std::size_t>(k)] * f[static_cast<std::size_t>(m - k)] * Real(k);
                }
                f[static_cast<std::size_t>(m)] = acc * (Real(1) / Real(m));
            }
            Jet r(window_);
            r.slices_.push_back(Slice{0, EpsMask::none, 0, std::move(f)});
            r.prune();
            return r;
        }

        Jet term = one(window_);
        Jet sum = one(window_);
        const int cap = window_.lambda_max + 2;
        for (int m = 1; m <= cap; ++m) {
            term = multiply(term, rest).scaled(scalar_type(Real(1) / Real(m)));
            if (term.is_zero()) break;
            sum = add(sum, term, false);
        }
        return sum.scaled(scale);
    }

    Jet exp_impl() const {
        const Jet b0 = component(EpsMask::none);
        const Jet e0 = b0.exp_eps_free();
        const Jet b1 = component(EpsMask::e1);
        const Jet b2 = component(EpsMask::e2);
        const Jet b12 = component(EpsMask::e12);
        if (b1.is_zero() && b2.is_zero() && b12.is_zero()) return e0;
        // exp(b0 + b1ε₁ + b2ε₂ + b12ε₁ε₂) = e^{b0}(1 + b1ε₁ + b2ε₂ + (b12 + b1b2)ε₁ε₂)
        Jet factor = one(window_);
        if (!b1.is_zero()) factor = add(factor, b1.attach(EpsMask::e1), false);
        if (!b2.is_zero()) factor = add(factor, b2.attach(EpsMask::e2), false);
        Jet mixed = b12;
        if (!b1.is_zero() && !b2.is_zero()) mixed = add(mixed, multiply(b1, b2), false);
        if (!mixed.is_zero()) factor = add(factor, mixed.attach(EpsMask::e12), false);
        return multiply(e0, factor);
    }

    Window window_;
    std::vector<Slice> slices_;  // sorted by (mask, L); no empty slices
};

template <class Real>
Complex<Real> extract(const Jet<Real>& a, int lambda_power, int log_power, EpsMask mask = EpsMask::none) {
    return a.coefficient(lambda_power, log_power, mask);
}

}  // namespace zerogap
