#pragma once

#include <string>
#include <utility>
#include <vector>

#include "zerogap/gap_inequality.hpp"

namespace zerogap {

struct SearchConfig {
    std::pair<double, double> u_range{1e-6, 0.0909};
    std::pair<double, double> v_range{1.8, 2.6};
    int n_u = 16;
    int n_v = 16;
    int refine_iters = 30;
    bool extended_u = false;
    std::vector<std::pair<double, double>> seeds;  // (u, v)
    double shrink = 0.5;
    SupKappaOptions kappa{};
    Execution execution = Execution::serial;  // grid phase only
};

struct TraceEntry {
    std::string phase;  // "seed", "grid", "refine" or "incumbent"
    double u = 0.0;
    double v = 0.0;
    bool feasible = false;
    double kappa = 0.0;  // sup κ, 0 when infeasible
    double multiplier = 0.0;
};

struct SearchResult {
    GapParams best;  // best.kappa = sup κ at (best.u, best.v)
    double gap_multiplier = 0.0;
    std::vector<TraceEntry> trace;
};

// Grid points of a range: endpoints included; one point means the midpoint.
std::vector<double> grid_points(std::pair<double, double> range, int n);

// Throws DomainError for invalid configs and InfeasibleError when no
// evaluated point is feasible.
SearchResult optimize(const SearchConfig& config);

}  // namespace zerogap
