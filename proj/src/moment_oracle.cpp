#include "zerogap/moment_oracle.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>

#include "zerogap/errors.hpp"

namespace zerogap {

Label parse_label(std::string_view text) {
    if (text.size() == 1) {
        const char c = text[0];
        if (c >= 'A' && c <= 'J') return static_cast<Label>(c - 'A');
        if (c >= 'a' && c <= 'j') return static_cast<Label>(c - 'a');
    }
    throw DomainError("unknown coefficient label '" + std::string(text) + "' (expected A..J)");
}

const MomentSpec& moment_spec(Label label) {
    using enum Slot;
    static const std::array<MomentSpec, 10> table = {{
        {Label::A, Amplifier::f, Amplifier::f, {}, 9},
        {Label::B, Amplifier::g, Amplifier::f, {}, 10},
        {Label::C, Amplifier::g, Amplifier::g, {}, 11},
        {Label::D, Amplifier::f, Amplifier::f, {beta}, 10},
        {Label::E, Amplifier::f, Amplifier::f, {alpha}, 10},
        {Label::F, Amplifier::f, Amplifier::f, {beta, gamma}, 11},
        {Label::G, Amplifier::f, Amplifier::f, {alpha, delta}, 11},
        {Label::H, Amplifier::f, Amplifier::f, {beta, delta}, 11},
        {Label::I, Amplifier::g, Amplifier::f, {beta}, 11},
        {Label::J, Amplifier::g, Amplifier::f, {alpha}, 11},
    }};
    return table[index_of(label)];
}

MomentSpec mirror_spec(const MomentSpec& spec) {
    MomentSpec m = spec;
    std::swap(m.first, m.second);
    for (auto& s : m.derivative_slots) {
        switch (s) {
            case Slot::alpha: s = Slot::delta; break;
            case Slot::beta: s = Slot::gamma; break;
            case Slot::gamma: s = Slot::beta; break;
            case Slot::delta: s = Slot::alpha; break;
        }
    }
    return m;
}

template <class Real>
const Jet<Real>& ShiftSet<Real>::operator[](Slot s) const {
    switch (s) {
        case Slot::alpha: return alpha;
        case Slot::beta: return beta;
        case Slot::gamma: return gamma;
        case Slot::delta: return delta;
    }
    throw std::logic_error("bad slot");
}

template <class Real>
ShiftSet<Real> make_shifts(double kappa, std::span<const Slot> derivative_slots, const Window& window) {
    using J = Jet<Real>;
    using C = Complex<Real>;
    if (derivative_slots.size() > 2) throw std::invalid_argument("at most two derivative slots");
    const C i_kappa(Real(0), Real(kappa));
    const C i_one(Real(0), Real(1));
    const J lam = J::monomial(window, i_one, 1, -1);  // iλ/L
    ShiftSet<Real> s{J::monomial(window, i_kappa, 0, -1) + lam, -lam, -lam, J::monomial(window, -i_kappa, 0, -1) + lam};
    const EpsMask gens[2] = {EpsMask::e1, EpsMask::e2};
    for (std::size_t k = 0; k < derivative_slots.size(); ++k) {
        if (k == 1 && derivative_slots[0] == derivative_slots[1]) {
            throw std::invalid_argument("derivative slots must be distinct");
        }
        const J eps = J::monomial(window, C(Real(1)), 0, 0, gens[k]);
        switch (derivative_slots[k]) {
            case Slot::alpha: s.alpha += eps; break;
            case Slot::beta: s.beta += eps; break;
            case Slot::gamma: s.gamma += eps; break;
            case Slot::delta: s.delta += eps; break;
        }
    }
    return s;
}

template <class Real>
std::vector<AmplifierTerm<Real>> expand_amplifier(Amplifier kind, const Jet<Real>& x1, const Jet<Real>& x2) {
    using J = Jet<Real>;
    const J empty(Window::intersect(x1.window(), x2.window()));
    const J inv1 = inverse(x1);
    const J inv2 = inverse(x2);
    const J inv12 = inv1 * inv2;
    const J inv_diff = inverse(x2 - x1);  // 1/(x2 - x1) = -1/(x1 - x2)
    if (kind == Amplifier::f) {
        return {
            {inv12, empty, 0, 0},
            {-(inv1 * inv_diff), -x1, 1, 0},
            {inv2 * inv_diff, -x2, 2, 0},
        };
    }
    const J inv1_sq = inv1 * inv1;
    const J inv2_sq = inv2 * inv2;
    return {
        {inv12, empty, 0, 1},
        {-(inv1_sq * inv2), empty, 0, 0},
        {-(inv2_sq * inv1), empty, 0, 0},
        {inv1_sq * inv_diff, -x1, 1, 0},
        {-(inv2_sq * inv_diff), -x2, 2, 0},
    };
}

namespace {

template <class Real>
Jet<Real> replaced_sum(const Jet<Real>& e, bool zero_exponent, int log_power, double u, const Window& window) {
    using J = Jet<Real>;
    using C = Complex<Real>;
    if (log_power < 0 || log_power > 2) {
        throw std::invalid_argument("m-sum log power must be 0, 1 or 2, got " + std::to_string(log_power));
    }
    const J ul = J::monomial(window, C(Real(u)), 0, 1);
    if (zero_exponent) {
        // α⁰ Taylor coefficient: (uL)^{j+1}/(j+1).
        J p = ul;
        for (int k = 0; k < log_power; ++k) p *= ul;
        return p.scaled(C(Real(1) / Real(log_power + 1)));
    }
    const J big = exp(e * ul);  // T^{eu}
    const J inv = inverse(e);
    const J one = J::one(window);
    switch (log_power) {
        case 0: return (big - one) * inv;
        case 1: {
            const J inv2 = inv * inv;
            return inv2 - big * inv2 + big * ul * inv;
        }
        default: {
            const J inv2 = inv * inv;
            const J inv3 = inv2 * inv;
            const C two(Real(2));
            return (big - one) * inv3 * two - big * ul * inv2 * two + big * ul * ul * inv;
        }
    }
}

}  // namespace

template <class Real>
Jet<Real> m_replace(const AmplifierTerm<Real>& term, double u) {
    const bool zero = term.exponent_index == 0;
    if (zero != term.exponent.is_zero()) {
        throw std::logic_error("exponent index and exponent jet disagree on the zero sum");
    }
    const Window w = Window::intersect(term.coefficient.window(), term.exponent.window());
    return term.coefficient * replaced_sum(term.exponent, zero, term.log_power, u, w);
}

template <class Real>
Jet<Real> m_replaced_product(Amplifier first, const Jet<Real>& x1, const Jet<Real>& x2, Amplifier second,
                             const Jet<Real>& y1, const Jet<Real>& y2, double u) {
    using J = Jet<Real>;
    const auto f1 = expand_amplifier(first, x1, x2);
    const auto f2 = expand_amplifier(second, y1, y2);
    const Window w = Window::intersect(Window::intersect(x1.window(), x2.window()),
                                       Window::intersect(y1.window(), y2.window()));

    struct Group {
        J coefficient;
        J exponent;
        bool zero;
    };
    std::map<std::tuple<int, int, int>, Group> groups;
    for (const auto& a : f1) {
        for (const auto& b : f2) {
            const auto key = std::tuple(a.exponent_index, b.exponent_index, a.log_power + b.log_power);
            const J c = a.coefficient * b.coefficient;
            auto it = groups.find(key);
            if (it == groups.end()) {
                const bool zero = a.exponent_index == 0 && b.exponent_index == 0;
                groups.emplace(key, Group{c, a.exponent + b.exponent, zero});
            } else {
                it->second.coefficient += c;
            }
        }
    }
    J total(w);
    for (const auto& [key, g] : groups) {
        if (!g.zero && g.exponent.is_zero()) {
            throw std::logic_error("nonempty shift sum vanished identically");
        }
        total += g.coefficient * replaced_sum(g.exponent, g.zero, std::get<2>(key), u, w);
    }
    return total;
}

template <class Real>
std::vector<SwapTerm<Real>> swap_terms(const ShiftSet<Real>& shifts, Amplifier first, Amplifier second, double u) {
    using J = Jet<Real>;
    using C = Complex<Real>;
    const std::array<const J*, 2> a = {&shifts.alpha, &shifts.beta};
    const std::array<const J*, 2> b = {&shifts.gamma, &shifts.delta};
    const Window w = Window::intersect(Window::intersect(shifts.alpha.window(), shifts.beta.window()),
                                       Window::intersect(shifts.gamma.window(), shifts.delta.window()));
    const J half_l = J::monomial(w, C(Real(1) / Real(2)), 0, 1);

    // (R, S) as bitmasks over the two-element sets, |R| = |S|.
    static constexpr std::array<std::pair<unsigned, unsigned>, 6> subset_pairs = {
        {{0U, 0U}, {1U, 1U}, {1U, 2U}, {2U, 1U}, {2U, 2U}, {3U, 3U}}};

    std::vector<SwapTerm<Real>> out;
    out.reserve(subset_pairs.size());
    for (const auto& [r, s] : subset_pairs) {
        std::vector<J> x;
        std::vector<J> y;
        for (unsigned i = 0; i < 2; ++i) {
            if ((r & (1U << i)) == 0U) x.push_back(*a[i]);
        }
        for (unsigned j = 0; j < 2; ++j) {
            if ((s & (1U << j)) != 0U) x.push_back(-*b[j]);
        }
        for (unsigned j = 0; j < 2; ++j) {
            if ((s & (1U << j)) == 0U) y.push_back(*b[j]);
        }
        for (unsigned i = 0; i < 2; ++i) {
            if ((r & (1U << i)) != 0U) y.push_back(-*a[i]);
        }

        J denom = J::one(w);
        for (const auto& xi : x) {
            for (const auto& yj : y) {
                const J sum = xi + yj;
                if (sum.is_zero()) throw DomainError("degenerate shifts: x + y vanishes identically");
                denom *= sum;
            }
        }
        const J shift_total = x[0] + x[1] + y[0] + y[1];
        J value = exp(shift_total * half_l) * m_replaced_product(first, x[0], x[1], second, y[0], y[1], u) *
                  inverse(denom);
        const int swapped = std::popcount(r);
        out.push_back(SwapTerm<Real>{{x[0], x[1]}, {y[0], y[1]}, swapped, std::move(value)});
    }
    return out;
}

template <class Real>
Jet<Real> swap_sum(const ShiftSet<Real>& shifts, Amplifier first, Amplifier second, double u) {
    using J = Jet<Real>;
    using C = Complex<Real>;
    const auto terms = swap_terms(shifts, first, second, u);
    const Window w = terms.front().value.window();
    J total(w);
    for (const auto& t : terms) total += t.value;
    const J all = shifts.alpha + shifts.beta + shifts.gamma + shifts.delta;
    return exp(-(all * J::monomial(w, C(Real(1) / Real(2)), 0, 1))) * total;
}

template <class Real>
Complex<Real> raw_moment(const MomentSpec& spec, double kappa, double u, const Window& window) {
    const auto shifts = make_shifts<Real>(kappa, spec.derivative_slots, window);
    const auto total = swap_sum(shifts, spec.first, spec.second, u);
    EpsMask mask = EpsMask::none;
    if (!spec.derivative_slots.empty()) mask = EpsMask::e1;
    if (spec.derivative_slots.size() == 2) mask = EpsMask::e12;
    return total.coefficient(0, spec.target_log_power, mask);
}

template <class Real>
Complex<Real> evaluate_moment(Label label, double kappa, double u, const OracleOptions& options) {
    if (!(kappa != 0.0) || !std::isfinite(kappa)) {
        throw DomainError("oracle requires kappa != 0; use the closed-form series near zero");
    }
    if (!(u > 0.0 && u < 1.0)) throw DomainError("oracle requires 0 < u < 1");
    const MomentSpec& spec = moment_spec(label);
    const Complex<Real> z = raw_moment<Real>(spec, kappa, u, options.window);
    if (!options.symmetrize) return z;
    const Complex<Real> m = raw_moment<Real>(mirror_spec(spec), kappa, u, options.window);
    return (z + m) * (Real(1) / Real(2));
}

#define ZEROGAP_INSTANTIATE_ORACLE(R)                                                                            \
    template struct ShiftSet<R>;                                                                                 \
    template ShiftSet<R> make_shifts<R>(double, std::span<const Slot>, const Window&);                           \
    template std::vector<AmplifierTerm<R>> expand_amplifier<R>(Amplifier, const Jet<R>&, const Jet<R>&);         \
    template Jet<R> m_replace<R>(const AmplifierTerm<R>&, double);                                               \
    template Jet<R> m_replaced_product<R>(Amplifier, const Jet<R>&, const Jet<R>&, Amplifier, const Jet<R>&,      \
                                          const Jet<R>&, double);                                                \
    template std::vector<SwapTerm<R>> swap_terms<R>(const ShiftSet<R>&, Amplifier, Amplifier, double);           \
    template Jet<R> swap_sum<R>(const ShiftSet<R>&, Amplifier, Amplifier, double);                               \
    template Complex<R> raw_moment<R>(const MomentSpec&, double, double, const Window&);                         \
    template Complex<R> evaluate_moment<R>(Label, double, double, const OracleOptions&);

ZEROGAP_INSTANTIATE_ORACLE(double)
ZEROGAP_INSTANTIATE_ORACLE(DoubleDouble)

}  // namespace zerogap
