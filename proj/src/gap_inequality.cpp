#include "zerogap/gap_inequality.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "zerogap/closed_forms.hpp"
#include "zerogap/errors.hpp"

namespace zerogap {
namespace {

std::string shortest(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

template <class T>
T bracket_from(const std::array<quad, 10>& q, T u, T v, bool reduced) {
    auto c = [&](Label l) { return static_cast<T>(q[index_of(l)]); };
    const T a = v / 2 - u;
    const T b = v - 2 * u;
    T head;
    if (reduced) {
        head = a * a * c(Label::A) + b * (c(Label::B) - c(Label::A));
    } else {
        head = a * a * c(Label::A) + b * (c(Label::B) + c(Label::D) + c(Label::E));
    }
    return head + c(Label::C) + c(Label::F) + c(Label::G) + 2 * c(Label::H) + 2 * c(Label::I) + 2 * c(Label::J);
}

double bracket_impl(const GapParams& p, Precision precision, bool reduced) {
    validate(p);
    const auto q = eval_all_quad(p.kappa, p.u);
    if (precision == Precision::extended) {
        return static_cast<double>(bracket_from<quad>(q, p.u, p.v, reduced));
    }
    return bracket_from<double>(q, p.u, p.v, reduced);
}

}  // namespace

void validate(const GapParams& p) {
    const double u_max = p.extended_u ? 1.0 : rigorous_u_max;
    if (!std::isfinite(p.u) || !(p.u > 0.0 && p.u < u_max)) {
        throw DomainError("u must satisfy 0 < u < " + std::string(p.extended_u ? "1" : "1/11") +
                          " (got " + shortest(p.u) + ")");
    }
    if (!std::isfinite(p.v) || !(p.v > 0.0)) throw DomainError("v must be > 0");
    if (!std::isfinite(p.kappa) || !(p.kappa > 0.0)) throw DomainError("kappa must be > 0");
}

double gap_multiplier(double kappa) { return kappa / std::numbers::pi; }

double bracket(const GapParams& p, Precision precision) { return bracket_impl(p, precision, false); }

double bracket_reduced(const GapParams& p, Precision precision) { return bracket_impl(p, precision, true); }

double phi(const GapParams& p, Precision precision) {
    const double k = p.kappa / std::numbers::pi;
    return k * k * bracket(p, precision);
}

GapVerdict check(const GapParams& p, Precision precision) {
    validate(p);
    const auto q = eval_all_quad(p.kappa, p.u);
    GapVerdict v;
    v.gap_multiplier = gap_multiplier(p.kappa);
    if (precision == Precision::extended) {
        const quad k = quad(p.kappa) / M_PIq;
        const quad lhs = q[index_of(Label::A)];
        const quad rhs = k * k * bracket_from<quad>(q, p.u, p.v, false);
        v.lhs = static_cast<double>(lhs);
        v.rhs = static_cast<double>(rhs);
        v.margin = static_cast<double>(lhs - rhs);
        v.holds = lhs > rhs;
    } else {
        const double k = v.gap_multiplier;
        v.lhs = static_cast<double>(q[index_of(Label::A)]);
        v.rhs = k * k * bracket_from<double>(q, p.u, p.v, false);
        v.margin = v.lhs - v.rhs;
        v.holds = v.lhs > v.rhs;
    }
    return v;
}

std::vector<double> kappa_scan_points(const SupKappaOptions& options) {
    if (!(options.scan_step > 0.0) || !(options.scan_low > 0.0) || options.scan_high < options.scan_low) {
        throw DomainError("invalid kappa scan range");
    }
    std::vector<double> pts;
    const auto n = static_cast<long>(std::floor((options.scan_high - options.scan_low) / options.scan_step + 1e-9));
    for (long k = 0; k <= n; ++k) pts.push_back(options.scan_low + static_cast<double>(k) * options.scan_step);
    return pts;
}

double sup_kappa(double u, double v, bool extended_u, const SupKappaOptions& options) {
    if (!(options.tol > 0.0)) throw DomainError("tolerance must be > 0");
    validate(GapParams{u, v, options.scan_low, extended_u});
    const auto pts = kappa_scan_points(options);
    std::vector<char> holds(pts.size(), 0);
    for_each_index(pts.size(), options.execution, [&](std::size_t i) {
        holds[i] = check(GapParams{u, v, pts[i], extended_u}, options.precision).holds ? 1 : 0;
    });
    std::size_t last = pts.size();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (holds[i] != 0) last = i;
    }
    if (last == pts.size()) {
        throw InfeasibleError("inequality fails at every kappa in the scan range for u = " + std::to_string(u) +
                              ", v = " + std::to_string(v));
    }
    if (last + 1 == pts.size()) {
        throw ScanRangeError("inequality still holds at the end of the kappa scan range");
    }
    double lo = pts[last];
    double hi = pts[last + 1];
    while (hi - lo > options.tol) {
        const double mid = 0.5 * (lo + hi);
        if (check(GapParams{u, v, mid, extended_u}, options.precision).holds) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

}  // namespace zerogap
