#pragma once

#include <vector>

#include "zerogap/parallel.hpp"
#include "zerogap/scalar.hpp"

namespace zerogap {

// Largest admissible u: 1/11 normally, 1 with extended_u (both exclusive).
inline constexpr double rigorous_u_max = 1.0 / 11.0;

struct GapParams {
    double u = 0.0;
    double v = 0.0;
    double kappa = 0.0;
    bool extended_u = false;
};

struct GapVerdict {
    bool holds = false;
    double lhs = 0.0;   // A_κ
    double rhs = 0.0;   // Φ(u, v, κ)
    double margin = 0.0;
    double gap_multiplier = 0.0;  // κ/π
};

// Throws DomainError unless 0 < u < u_max, v > 0, κ > 0, all finite.
void validate(const GapParams& p);

double gap_multiplier(double kappa);

// (v/2-u)²A + (v-2u)(B+D+E) + C + F + G + 2H + 2I + 2J
double bracket(const GapParams& p, Precision precision = Precision::standard);
// Same bracket with the A/B/D/E block written as (v/2-u)²A + (v-2u)(B-A).
double bracket_reduced(const GapParams& p, Precision precision = Precision::standard);

double phi(const GapParams& p, Precision precision = Precision::standard);

GapVerdict check(const GapParams& p, Precision precision = Precision::standard);

struct SupKappaOptions {
    double scan_low = 0.5;
    double scan_high = 20.0;
    double scan_step = 0.25;
    double tol = 1e-6;
    Precision precision = Precision::standard;
    Execution execution = Execution::serial;
};

// Largest κ* (to options.tol) with the inequality holding just left of κ*.
// Throws InfeasibleError if no scan point holds and ScanRangeError if the
// last scan point still holds.
double sup_kappa(double u, double v, bool extended_u, const SupKappaOptions& options = {});

// Scan grid used by sup_kappa: scan_low + k·scan_step up to scan_high.
std::vector<double> kappa_scan_points(const SupKappaOptions& options);

}  // namespace zerogap
