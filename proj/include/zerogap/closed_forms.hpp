#pragma once

// Explicit coefficient functions A_κ … J_κ.
//
// Each label is a sum of terms  p(u) · κ^{-n} · trig(κ·arg)  with trig one of
// {1, sin, cos} and arg one of {u, 1, 1-u}. The same table feeds the direct
// evaluation and the exact κ-Taylor expansion.

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "zerogap/label.hpp"
#include "zerogap/scalar.hpp"
#include "zerogap/upoly.hpp"

namespace zerogap {

enum class Trig { none, sin, cos };
enum class TrigArg { u, one, one_minus_u };

struct ClosedTerm {
    int kappa_pole;  // n in κ^{-n}
    UPoly poly;
    Trig trig;
    TrigArg arg;
};

// Term table of a label. D and E have no table of their own (empty span).
const std::vector<ClosedTerm>& closed_terms(Label label);

inline constexpr double kappa_switch = 0.25;
inline constexpr int series_order = 40;

// Exact Taylor expansion in κ. Coefficients at negative powers are checked
// to vanish exactly during construction.
class KappaSeries {
public:
    int order() const { return order_; }
    // Coefficient of κ^k for 0 ≤ k ≤ order (zero polynomial beyond).
    const UPoly& coefficient(int k) const;
    // Coefficients found at negative κ-powers before the check; all zero
    // for a correct table.
    const std::map<int, UPoly>& negative_part() const { return negative_; }
    std::size_t negative_nonzero_count() const;

    mpq_class evaluate_u(int k, const mpq_class& u) const { return coefficient(k).evaluate(u); }

private:
    friend KappaSeries expand_series(Label, int, bool);
    int order_ = 0;
    std::vector<UPoly> coeffs_;
    std::map<int, UPoly> negative_;
};

// Throws TranscriptionError if any negative κ-power survives.
KappaSeries kappa_taylor(Label label, int order);

// Same expansion without the tripwire, for reporting.
KappaSeries expand_series(Label label, int order, bool check);

// Throws DomainError for u outside (0, 1].
double eval(Label label, double kappa, double u);
quad eval_quad(Label label, quad kappa, quad u);
std::array<double, 10> eval_all(double kappa, double u);
std::array<quad, 10> eval_all_quad(quad kappa, quad u);

// Individual branches, exposed for consistency checks.
quad eval_direct(Label label, quad kappa, quad u);
quad eval_series(Label label, quad kappa, quad u);

// Magnitude of each table term of a label at (κ, u), in table order.
std::vector<double> term_magnitudes(Label label, double kappa, double u);

struct A3Result {
    double value;        // partial product over p ≤ prime_limit
    double tail_bound;   // |a₃ - value| ≤ tail_bound
    std::uint64_t prime_limit;
    std::uint64_t prime_count;
};

// Throws DomainError for prime_limit < 2.
A3Result a3(std::uint64_t prime_limit);

// 42/9!, the leading constant multiplying a₃ in the sixth-moment conjecture.
inline constexpr double sixth_moment_factor = 42.0 / 362880.0;

}  // namespace zerogap
