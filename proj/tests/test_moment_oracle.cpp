#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <random>
#include <stdexcept>

#include "support/oracles.hpp"
#include "zerogap/closed_forms.hpp"
#include "zerogap/errors.hpp"
#include "zerogap/moment_oracle.hpp"

using namespace zerogap;

namespace {

using J = Jet<double>;
using C = Complex<double>;
using DD = DoubleDouble;
using cplx = std::complex<double>;
const Window w{};

cplx to_std(const C& c) { return {c.re, c.im}; }
cplx to_std(const Complex<DD>& c) { return {c.re.to_double(), c.im.to_double()}; }
double dd_abs(const Complex<DD>& c) { return std::abs(to_std(c)); }

// Sum of the ε-free slices at numeric λ and L.
cplx evaluate_at(const J& a, double lambda, double log_t) {
    cplx s = 0;
    for (const auto& sl : a.slices()) {
        if (sl.mask != EpsMask::none) continue;
        for (std::size_t k = 0; k < sl.coeffs.size(); ++k) {
            const int p = sl.lo + static_cast<int>(k);
            s += to_std(sl.coeffs[k]) * std::pow(lambda, p) * std::pow(log_t, sl.log_power);
        }
    }
    return s;
}

J shift(cplx c, int lam, int log) { return J::monomial(w, C(c.real(), c.imag()), lam, log); }

}  // namespace

TEST_CASE("moment table", "[oracle]") {
    REQUIRE(moment_spec(Label::A).target_log_power == 9);
    REQUIRE(moment_spec(Label::B).first == Amplifier::g);
    REQUIRE(moment_spec(Label::B).second == Amplifier::f);
    REQUIRE(moment_spec(Label::C).target_log_power == 11);
    REQUIRE(moment_spec(Label::H).derivative_slots == std::vector<Slot>{Slot::beta, Slot::delta});
    REQUIRE(moment_spec(Label::J).derivative_slots == std::vector<Slot>{Slot::alpha});

    const auto m = mirror_spec(moment_spec(Label::I));
    REQUIRE(m.first == Amplifier::f);
    REQUIRE(m.second == Amplifier::g);
    REQUIRE(m.derivative_slots == std::vector<Slot>{Slot::gamma});
}

TEST_CASE("shifts at the target configuration", "[oracle]") {
    const auto s = make_shifts<double>(1.5, {}, w);
    REQUIRE(s.alpha.coefficient(0, -1).im == 1.5);
    REQUIRE(s.delta.coefficient(0, -1).im == -1.5);
    REQUIRE(s.beta.coefficient(0, -1).is_zero());
    REQUIRE(s.beta.coefficient(1, -1).im == -1.0);

    const Slot two[] = {Slot::beta, Slot::delta};
    const auto e = make_shifts<double>(1.5, two, w);
    REQUIRE(e.beta.coefficient(0, 0, EpsMask::e1).re == 1.0);
    REQUIRE(e.delta.coefficient(0, 0, EpsMask::e2).re == 1.0);
    const Slot same[] = {Slot::beta, Slot::beta};
    REQUIRE_THROWS_AS(make_shifts<double>(1.5, same, w), std::invalid_argument);
}

TEST_CASE("amplifier expansions", "[oracle]") {
    const cplx a(0.7, 1.1), b(-0.4, 0.9);
    const J x1 = shift(a, 0, 0), x2 = shift(b, 0, 0);

    const auto f = expand_amplifier(Amplifier::f, x1, x2);
    REQUIRE(f.size() == 3);
    const auto g = expand_amplifier(Amplifier::g, x1, x2);
    REQUIRE(g.size() == 5);
    bool found = false;
    for (const auto& t : g) {
        if (t.log_power == 1) {
            found = true;
            REQUIRE(std::abs(to_std(t.coefficient.coefficient(0, 0)) - 1.0 / (a * b)) < 1e-15);
        }
    }
    REQUIRE(found);

    // Literal evaluation at a numeric X.
    const double big_x = 3.7;
    const double lx = std::log(big_x);
    for (Amplifier kind : {Amplifier::f, Amplifier::g}) {
        cplx s = 0;
        for (const auto& t : expand_amplifier(kind, x1, x2)) {
            const cplx e = t.exponent.is_zero() ? cplx(0) : to_std(t.exponent.coefficient(0, 0));
            s += to_std(t.coefficient.coefficient(0, 0)) * std::exp(e * lx) * std::pow(lx, t.log_power);
        }
        const cplx want = kind == Amplifier::f ? testsupport::f_direct(a, b, big_x) : testsupport::g_direct(a, b, big_x);
        REQUIRE(std::abs(s - want) <= 1e-13 * std::abs(want));
    }
}

TEST_CASE("amplifier with λ-dependent shifts agrees with direct substitution", "[oracle]") {
    // The pole terms reach ~1e7 and cancel in this double evaluation, while
    // larger λ runs into the truncated λ series.
    const double kappa = 1.0, lambda = 0.03, u = 0.07, log_t = 40.0;
    const J x1 = J::monomial(w, C(0, kappa), 0, -1) + J::monomial(w, C(0, 1), 1, -1);
    const J x2 = J::monomial(w, C(0, 1), 1, -1);
    const cplx n1(0, (kappa + lambda) / log_t), n2(0, lambda / log_t);
    const double big_x = std::exp(u * log_t);

    for (Amplifier kind : {Amplifier::f, Amplifier::g}) {
        cplx s = 0;
        for (const auto& t : expand_amplifier(kind, x1, x2)) {
            const cplx c = evaluate_at(t.coefficient, lambda, log_t);
            const cplx e = t.exponent.is_zero() ? cplx(0) : evaluate_at(t.exponent, lambda, log_t);
            s += c * std::exp(e * u * log_t) * std::pow(u * log_t, t.log_power);
        }
        const cplx want =
            kind == Amplifier::f ? testsupport::f_direct(n1, n2, big_x) : testsupport::g_direct(n1, n2, big_x);
        REQUIRE(std::abs(s - want) <= 1e-7 * std::abs(want));
    }
}

TEST_CASE("m-sum replacement examples", "[oracle]") {
    const double u = 0.05;
    const AmplifierTerm<double> zero0{J::one(w), J(w), 0, 0};
    const J r0 = m_replace(zero0, u);
    REQUIRE(max_abs_difference(r0, J::monomial(w, C(u), 0, 1)) < 1e-16);

    const AmplifierTerm<double> zero1{J::one(w), J(w), 0, 1};
    REQUIRE(max_abs_difference(m_replace(zero1, u), J::monomial(w, C(u * u / 2), 0, 2)) < 1e-16);

    const AmplifierTerm<double> zero2{J::one(w), J(w), 0, 2};
    REQUIRE(max_abs_difference(m_replace(zero2, u), J::monomial(w, C(u * u * u / 3), 0, 3)) < 1e-16);

    // e = iλ/L: L(e^{iuλ} - 1)/(iλ), pole cancelled
    const AmplifierTerm<double> pure{J::one(w), J::monomial(w, C(0, 1), 1, -1), 1, 0};
    const J r = m_replace(pure, u);
    REQUIRE(r.lambda_valuation() >= 0);
    REQUIRE(std::abs(r.coefficient(0, 1).re - u) < 1e-16);
    REQUIRE(std::abs(r.coefficient(1, 1).im - u * u / 2) < 1e-16);

    const AmplifierTerm<double> bad{J::one(w), J(w), 0, 3};
    REQUIRE_THROWS_AS(m_replace(bad, u), std::invalid_argument);
}

TEST_CASE("six swap terms, identity first", "[oracle]") {
    const auto s = make_shifts<double>(2.0, {}, w);
    const auto terms = swap_terms(s, Amplifier::f, Amplifier::f, 0.05);
    REQUIRE(terms.size() == 6);
    int by_size[3] = {0, 0, 0};
    for (const auto& t : terms) ++by_size[t.swapped];
    REQUIRE(by_size[0] == 1);
    REQUIRE(by_size[1] == 4);
    REQUIRE(by_size[2] == 1);

    const auto& id = terms.front();
    REQUIRE(id.swapped == 0);
    REQUIRE(max_abs_difference(id.x[0], s.alpha) == 0.0);
    REQUIRE(max_abs_difference(id.x[1], s.beta) == 0.0);
    REQUIRE(max_abs_difference(id.y[0], s.gamma) == 0.0);
    REQUIRE(max_abs_difference(id.y[1], s.delta) == 0.0);
    const J half_l = J::monomial(w, C(0.5), 0, 1);
    J denom = J::one(w);
    for (const J* x : {&s.alpha, &s.beta}) {
        for (const J* y : {&s.gamma, &s.delta}) denom *= *x + *y;
    }
    const J direct = exp((s.alpha + s.beta + s.gamma + s.delta) * half_l) *
                     m_replaced_product(Amplifier::f, s.alpha, s.beta, Amplifier::f, s.gamma, s.delta, 0.05) *
                     inverse(denom);
    REQUIRE(max_abs_difference(direct, id.value) <= 1e-12 * id.value.max_abs_coefficient());
}

TEST_CASE("(f,f) product matches the nine-term expression", "[oracle]") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    auto generic = [](const std::array<cplx, 4>& c) {
        for (int i = 0; i < 4; ++i) {
            if (std::abs(c[i]) < 0.3) return false;
            for (int j = i + 1; j < 4; ++j) {
                if (std::abs(c[i] - c[j]) < 0.3) return false;
            }
        }
        for (int i : {0, 1}) {
            for (int j : {2, 3}) {
                if (std::abs(c[i] + c[j]) < 0.3) return false;
            }
        }
        return true;
    };
    int done = 0;
    while (done < 20) {
        const double u = 0.02 + 0.07 * std::uniform_real_distribution<double>(0, 1)(rng);
        std::array<cplx, 4> c;
        for (auto& z : c) z = {d(rng), d(rng)};
        if (!generic(c)) continue;
        // u·c of order one, so the nine terms do not cancel to nothing
        for (auto& z : c) z /= u;
        // x = c/L makes the product a single L⁵ term.
        const J p = m_replaced_product(Amplifier::f, shift(c[0], 0, -1), shift(c[1], 0, -1), Amplifier::f,
                                       shift(c[2], 0, -1), shift(c[3], 0, -1), u);
        const cplx got = to_std(p.coefficient(0, 5));
        const cplx want = testsupport::appendix_formula(c[0], c[1], c[2], c[3], u, 1.0);
        INFO("sample " << done);
        REQUIRE(std::abs(got - want) <= 1e-10 * std::abs(want));
        for (int lp = w.log_min; lp <= w.log_max; ++lp) {
            if (lp != 5) REQUIRE(std::abs(to_std(p.coefficient(0, lp))) <= 1e-12 * std::abs(want));
        }
        ++done;
    }
}

TEST_CASE("negative λ powers cancel in the assembled sum", "[oracle]") {
    for (Label label : all_labels) {
        const MomentSpec& spec = moment_spec(label);
        const auto s = make_shifts<DD>(2.0, spec.derivative_slots, w);
        const auto total = swap_sum(s, spec.first, spec.second, 0.05);
        for (const auto& sl : total.slices()) {
            const double ref = std::max(dd_abs(total.coefficient(0, sl.log_power, sl.mask)), 1e-300);
            double worst = 0;
            for (int p = sl.lo; p < 0; ++p) worst = std::max(worst, dd_abs(sl.coeffs[p - sl.lo]));
            INFO(to_string(label) << " L^" << sl.log_power);
            REQUIRE(worst <= 1e-9 * std::max(ref, dd_abs(total.coefficient(0, spec.target_log_power, sl.mask))));
        }
    }
}

// A step much below 1e-2 puts the perturbed shift within h of another shift;
// the λ series then carry powers of 1/h and the jet arithmetic loses every
// digit. A fourth-order stencil at 1e-2 is accurate to about 1e-9.
TEST_CASE("ε coefficients match a central finite difference", "[oracle]") {
    const double h = 1e-2;
    for (Label label : {Label::D, Label::E, Label::I, Label::J}) {
        const MomentSpec& spec = moment_spec(label);
        for (double kappa : {1.0, 3.0}) {
            const double u = 0.05;
            const Complex<DD> want = raw_moment<DD>(spec, kappa, u, w);
            auto phi = [&](double b) {
                auto s = make_shifts<DD>(kappa, {}, w);
                const auto delta = Jet<DD>::monomial(w, Complex<DD>(DD(0), DD(b)), 0, -1);
                switch (spec.derivative_slots[0]) {
                    case Slot::alpha: s.alpha += delta; break;
                    case Slot::beta: s.beta += delta; break;
                    case Slot::gamma: s.gamma += delta; break;
                    case Slot::delta: s.delta += delta; break;
                }
                return to_std(swap_sum(s, spec.first, spec.second, u).coefficient(0, spec.target_log_power - 1));
            };
            const cplx fd = (8.0 * (phi(h) - phi(-h)) - (phi(2 * h) - phi(-2 * h))) / cplx(0, 12 * h);
            INFO(to_string(label) << " kappa " << kappa);
            REQUIRE(std::abs(fd - to_std(want)) <= 1e-5 * std::abs(to_std(want)));
        }
    }
}

TEST_CASE("D and E equal -A/2", "[oracle]") {
    for (double kappa : {1.0, 3.0, 8.69}) {
        for (double u : {0.03, 0.0909}) {
            const DD a = evaluate_moment<DD>(Label::A, kappa, u).re;
            for (Label l : {Label::D, Label::E}) {
                const DD v = evaluate_moment<DD>(l, kappa, u).re;
                const double rel = std::abs((v + a * DD(0.5)).to_double()) / std::abs(a.to_double());
                REQUIRE(rel <= 1e-9);
            }
        }
    }
}

TEST_CASE("mirror evaluation is the complex conjugate", "[oracle]") {
    for (Label label : all_labels) {
        const MomentSpec& spec = moment_spec(label);
        const cplx z = to_std(raw_moment<DD>(spec, 2.0, 0.05, w));
        const cplx m = to_std(raw_moment<DD>(mirror_spec(spec), 2.0, 0.05, w));
        INFO(to_string(label));
        REQUIRE(std::abs(m - std::conj(z)) <= 1e-12 * std::abs(z));
    }
}

TEST_CASE("oracle agrees with closed forms and is real", "[oracle]") {
    for (Label label : all_labels) {
        for (double kappa : {1.0, 8.69}) {
            const Complex<DD> z = evaluate_moment<DD>(label, kappa, 0.0909);
            const double cf = eval(label, kappa, 0.0909);
            INFO(to_string(label) << " kappa " << kappa);
            REQUIRE(std::abs(z.re.to_double() - cf) <= 1e-8 * std::max(1.0, std::abs(cf)));
            REQUIRE(std::abs(z.re.to_double() - cf) <= 1e-8 * std::abs(cf));
            REQUIRE(std::abs(z.im.to_double()) <= 1e-10 * dd_abs(z));
        }
    }
    const double a = evaluate_moment<double>(Label::A, 8.69, 0.0909).re;
    REQUIRE(std::abs(a - eval(Label::A, 8.69, 0.0909)) <= 1e-8 * std::abs(a));
}

TEST_CASE("deeper λ window leaves values unchanged", "[oracle]") {
    OracleOptions deep;
    deep.window.lambda_min *= 2;
    deep.window.lambda_max *= 2;
    for (Label label : {Label::A, Label::C, Label::H}) {
        const DD a = evaluate_moment<DD>(label, 2.0, 0.05).re;
        const DD b = evaluate_moment<DD>(label, 2.0, 0.05, deep).re;
        REQUIRE(std::abs((a - b).to_double()) <= 1e-10 * std::abs(b.to_double()));
    }
}

TEST_CASE("shallow λ window is detected", "[oracle]") {
    OracleOptions shallow;
    shallow.window.lambda_min = -3;
    REQUIRE_THROWS_AS(evaluate_moment<double>(Label::B, 2.0, 0.05, shallow), JetError);
    try {
        (void)evaluate_moment<double>(Label::H, 2.0, 0.05, shallow);
        FAIL("expected underflow");
    } catch (const JetError& e) {
        REQUIRE(e.kind() == JetError::Kind::window_underflow);
    }
}

TEST_CASE("oracle domain errors", "[oracle]") {
    REQUIRE_THROWS_AS(evaluate_moment<double>(Label::A, 0.0, 0.05), DomainError);
    REQUIRE_THROWS_AS(evaluate_moment<double>(Label::A, 1.0, 0.0), DomainError);
    REQUIRE_THROWS_AS(evaluate_moment<double>(Label::A, 1.0, 1.0), DomainError);
}
