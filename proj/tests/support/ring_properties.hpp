#pragma once

// Randomized algebra checks shared by the unit tests and the acceptance run.

#include <algorithm>
#include <cmath>
#include <random>

#include "zerogap/ring.hpp"

namespace testsupport {

using zerogap::Complex;
using zerogap::EpsMask;
using zerogap::Jet;
using zerogap::Window;
using J = Jet<double>;
using C = Complex<double>;

inline C random_coeff(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    return {d(rng), d(rng)};
}

inline EpsMask random_mask(std::mt19937_64& rng) {
    return static_cast<EpsMask>(std::uniform_int_distribution<int>(0, 3)(rng));
}

// λ in [-3, 3], L in [-2, 2]: triple products stay inside the default window.
inline J random_element(std::mt19937_64& rng, const Window& w) {
    std::uniform_int_distribution<int> lam(-3, 3);
    std::uniform_int_distribution<int> log(-2, 2);
    std::uniform_int_distribution<int> count(1, 6);
    J a(w);
    const int n = count(rng);
    for (int i = 0; i < n; ++i) a += J::monomial(w, random_coeff(rng), lam(rng), log(rng), random_mask(rng));
    return a;
}

// Leading ε-free part c·λ⁰·L^k, higher λ-orders at the same L-power, ε parts
// one L-power up. Mirrors the homogeneous divisors built from shifts.
inline J random_invertible(std::mt19937_64& rng, const Window& w) {
    std::uniform_int_distribution<int> log(-2, 2);
    const int k = log(rng);
    C lead = random_coeff(rng);
    lead.re += lead.re < 0 ? -0.5 : 0.5;  // keep |lead| away from zero
    J a = J::monomial(w, lead, 0, k);
    for (int p = 1; p <= 3; ++p) a += J::monomial(w, random_coeff(rng), p, k);
    for (EpsMask m : {EpsMask::e1, EpsMask::e2, EpsMask::e12}) {
        if (std::bernoulli_distribution(0.6)(rng)) {
            a += J::monomial(w, random_coeff(rng), std::uniform_int_distribution<int>(0, 2)(rng), k + 1, m);
        }
    }
    return a;
}

// Constant plus positive-λ and ε parts with non-negative L-powers.
inline J random_exponent(std::mt19937_64& rng, const Window& w) {
    J a = J::constant(w, random_coeff(rng));
    std::uniform_int_distribution<int> lam(1, 4);
    std::uniform_int_distribution<int> log(0, 2);
    for (int i = 0; i < 3; ++i) a += J::monomial(w, random_coeff(rng) * 0.5, lam(rng), log(rng));
    for (EpsMask m : {EpsMask::e1, EpsMask::e2, EpsMask::e12}) {
        if (std::bernoulli_distribution(0.6)(rng)) {
            a += J::monomial(w, random_coeff(rng), std::uniform_int_distribution<int>(0, 2)(rng), log(rng), m);
        }
    }
    return a;
}

// Pure λ-pole leading part c·λ·L^{-1}, like a shift sum with κ cancelled.
inline J random_pole_divisor(std::mt19937_64& rng, const Window& w) {
    C lead = random_coeff(rng);
    lead.re += lead.re < 0 ? -0.5 : 0.5;
    J a = J::monomial(w, lead, 1, -1);
    for (int p = 2; p <= 3; ++p) a += J::monomial(w, random_coeff(rng), p, -1);
    a += J::monomial(w, random_coeff(rng), 0, 0, EpsMask::e1);
    return a;
}

inline double scale_of(const J& a) { return std::max(1.0, a.max_abs_coefficient()); }

struct RingPropertyReport {
    int samples = 0;
    double associativity = 0;   // relative
    double commutativity = 0;   // relative
    double distributivity = 0;  // relative
    double inverse = 0;         // |a·a⁻¹ - 1| relative to |a|·|a⁻¹|
    double exp_homomorphism = 0;
    double window_stability = 0;  // relative change of λ⁰ coefficients
};

// Runs every property on `samples` random draws per property.
inline RingPropertyReport run_ring_properties(int samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const Window w{};
    RingPropertyReport r;
    r.samples = samples;
    for (int i = 0; i < samples; ++i) {
        const J a = random_element(rng, w);
        const J b = random_element(rng, w);
        const J c = random_element(rng, w);
        const double s = scale_of(a) * scale_of(b) * scale_of(c);
        r.associativity = std::max(r.associativity, max_abs_difference((a * b) * c, a * (b * c)) / s);
        r.commutativity =
            std::max(r.commutativity, max_abs_difference(a * b, b * a) / (scale_of(a) * scale_of(b)));
        r.distributivity = std::max(r.distributivity, max_abs_difference(a * (b + c), a * b + a * c) / s);

        const J d = random_invertible(rng, w);
        const J di = inverse(d);
        r.inverse = std::max(r.inverse, max_abs_difference(d * di, J::one(w)) / (scale_of(d) * scale_of(di)));

        const J x = random_exponent(rng, w);
        const J y = random_exponent(rng, w);
        const J lhs = exp(x + y);
        r.exp_homomorphism = std::max(r.exp_homomorphism, max_abs_difference(lhs, exp(x) * exp(y)) / scale_of(lhs));

        // λ⁰ coefficients of p·q⁻¹·r⁻¹ with pole divisors q, r, in the
        // default window and in a doubled one.
        const Window deep{2 * w.lambda_min, 2 * w.lambda_max, w.log_min, w.log_max};
        std::mt19937_64 fork(rng());
        std::mt19937_64 fork2 = fork;
        auto build = [](std::mt19937_64& g, const Window& win) {
            const J p = random_element(g, win);
            const J q = random_pole_divisor(g, win);
            const J t = random_pole_divisor(g, win);
            return p * inverse(q) * inverse(t);
        };
        const J e1 = build(fork, w);
        const J e2 = build(fork2, deep);
        for (int lp = w.log_min; lp <= w.log_max; ++lp) {
            for (EpsMask m : {EpsMask::none, EpsMask::e1, EpsMask::e2, EpsMask::e12}) {
                const C u = e1.coefficient(0, lp, m);
                const C v = e2.coefficient(0, lp, m);
                const double diff = (u - v).norm1() / std::max(1.0, v.norm1());
                r.window_stability = std::max(r.window_stability, diff);
            }
        }
    }
    return r;
}

}  // namespace testsupport
