#pragma once

// Swap-sum oracle for the ten shifted-moment coefficients.
//
// Every quantity is a Jet: shifts are i(κ+λ)/L, -iλ/L, -iλ/L, i(-κ+λ)/L with
// optional ε perturbations on the differentiated slots, and the coefficient
// is read off at λ⁰, L^target and the ε-mask of the used generators.

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "zerogap/label.hpp"
#include "zerogap/ring.hpp"

namespace zerogap {

enum class Amplifier { f, g };
enum class Slot { alpha, beta, gamma, delta };

struct MomentSpec {
    Label label;
    Amplifier first;   // bound to X (the α, β side)
    Amplifier second;  // bound to Y (the γ, δ side)
    std::vector<Slot> derivative_slots;
    int target_log_power;
};

const MomentSpec& moment_spec(Label label);

template <class Real>
struct ShiftSet {
    Jet<Real> alpha;
    Jet<Real> beta;
    Jet<Real> gamma;
    Jet<Real> delta;

    const Jet<Real>& operator[](Slot s) const;
};

// Specialized shifts; the first listed slot gets ε₁, the second ε₂.
template <class Real>
ShiftSet<Real> make_shifts(double kappa, std::span<const Slot> derivative_slots, const Window& window);

template <class Real>
struct AmplifierTerm {
    Jet<Real> coefficient;
    Jet<Real> exponent;   // power of T^u/m; empty jet for the zero sum
    int exponent_index;   // 0: zero sum, 1: -x1, 2: -x2
    int log_power;
};

template <class Real>
std::vector<AmplifierTerm<Real>> expand_amplifier(Amplifier kind, const Jet<Real>& x1, const Jet<Real>& x2);

// Replace Σ_{m ≤ T^u} (T^u/m)^e log^j(T^u/m) / m by its closed leading form.
// Throws std::invalid_argument for log_power outside {0, 1, 2}.
template <class Real>
Jet<Real> m_replace(const AmplifierTerm<Real>& term, double u);

// m-replaced product F₁(x1, x2) · F₂(y1, y2), with terms of equal exponent
// and log power grouped before the replacement.
template <class Real>
Jet<Real> m_replaced_product(Amplifier first, const Jet<Real>& x1, const Jet<Real>& x2, Amplifier second,
                             const Jet<Real>& y1, const Jet<Real>& y2, double u);

template <class Real>
struct SwapTerm {
    std::array<Jet<Real>, 2> x;
    std::array<Jet<Real>, 2> y;
    int swapped;  // |R| = |S|
    Jet<Real> value;
};

// The six summands of 𝒬_{A,B}, without the outer T^{-(α+β+γ+δ)/2}.
template <class Real>
std::vector<SwapTerm<Real>> swap_terms(const ShiftSet<Real>& shifts, Amplifier first, Amplifier second, double u);

template <class Real>
Jet<Real> swap_sum(const ShiftSet<Real>& shifts, Amplifier first, Amplifier second, double u);

struct OracleOptions {
    Window window{};
    // Average with the conjugate-mirror evaluation, which cancels the
    // imaginary part of the labels that are defined as real parts.
    bool symmetrize = true;
};

// Raw complex coefficient for one spec at one point, no symmetrization.
template <class Real>
Complex<Real> raw_moment(const MomentSpec& spec, double kappa, double u, const Window& window);

// Throws DomainError for κ = 0 or u outside (0, 1).
template <class Real>
Complex<Real> evaluate_moment(Label label, double kappa, double u, const OracleOptions& options = {});

// Mirror of a spec: slots α↔δ, β↔γ and the amplifier pair reversed.
MomentSpec mirror_spec(const MomentSpec& spec);

}  // namespace zerogap
