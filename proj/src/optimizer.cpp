#include "zerogap/optimizer.hpp"

#include <cmath>
#include <map>
#include <optional>
#include <tuple>

#include "zerogap/errors.hpp"

namespace zerogap {
namespace {

struct Point {
    double u;
    double v;
    bool feasible;
    double kappa;
    double multiplier;
};

// Higher multiplier wins; ties go to the lexicographically smaller (u, v).
bool better(const Point& a, const Point& b) {
    if (a.feasible != b.feasible) return a.feasible;
    if (a.multiplier != b.multiplier) return a.multiplier > b.multiplier;
    return std::tie(a.u, a.v) < std::tie(b.u, b.v);
}

void validate_config(const SearchConfig& c) {
    const double u_max = c.extended_u ? 1.0 : rigorous_u_max;
    const auto& [ul, uh] = c.u_range;
    const auto& [vl, vh] = c.v_range;
    if (!std::isfinite(ul) || !std::isfinite(uh) || !(ul > 0.0) || !(uh < u_max) || ul > uh) {
        throw DomainError("u range must satisfy 0 < low <= high < " + std::string(c.extended_u ? "1" : "1/11"));
    }
    if (!std::isfinite(vl) || !std::isfinite(vh) || !(vl > 0.0) || vl > vh) {
        throw DomainError("v range must satisfy 0 < low <= high");
    }
    if (c.n_u < 1 || c.n_v < 1) throw DomainError("grid dimensions must be >= 1");
    if (c.refine_iters < 0) throw DomainError("refine iterations must be >= 0");
    if (!(c.shrink > 0.0 && c.shrink < 1.0)) throw DomainError("shrink factor must lie in (0, 1)");
    for (const auto& [u, v] : c.seeds) validate(GapParams{u, v, 1.0, c.extended_u});
}

double step_of(std::pair<double, double> range, int n) {
    const double width = range.second - range.first;
    return n > 1 ? width / (n - 1) : width / 2;
}

bool inside(double x, std::pair<double, double> range) { return x >= range.first && x <= range.second; }

}  // namespace

std::vector<double> grid_points(std::pair<double, double> range, int n) {
    if (n < 1) throw DomainError("grid dimension must be >= 1");
    if (n == 1) return {0.5 * (range.first + range.second)};
    std::vector<double> pts(static_cast<std::size_t>(n));
    const double h = (range.second - range.first) / (n - 1);
    for (int i = 0; i < n; ++i) pts[static_cast<std::size_t>(i)] = range.first + i * h;
    pts.back() = range.second;
    return pts;
}

SearchResult optimize(const SearchConfig& config) {
    validate_config(config);
    SupKappaOptions kopt = config.kappa;
    kopt.execution = Execution::serial;

    auto evaluate = [&](double u, double v) {
        Point p{u, v, false, 0.0, 0.0};
        try {
            p.kappa = sup_kappa(u, v, config.extended_u, kopt);
            p.feasible = true;
            p.multiplier = gap_multiplier(p.kappa);
        } catch (const InfeasibleError&) {
        }
        return p;
    };

    SearchResult result;
    std::map<std::pair<double, double>, Point> cache;
    std::optional<Point> best;
    auto record = [&](const Point& p, const char* phase) {
        result.trace.push_back(TraceEntry{phase, p.u, p.v, p.feasible, p.kappa, p.multiplier});
        cache.emplace(std::pair(p.u, p.v), p);
        if (!best || better(p, *best)) best = p;
    };

    for (const auto& [u, v] : config.seeds) record(evaluate(u, v), "seed");

    const auto us = grid_points(config.u_range, config.n_u);
    const auto vs = grid_points(config.v_range, config.n_v);
    std::vector<Point> grid(us.size() * vs.size());
    for_each_index(grid.size(), config.execution, [&](std::size_t i) {
        grid[i] = evaluate(us[i / vs.size()], vs[i % vs.size()]);
    });
    for (const auto& p : grid) record(p, "grid");

    if (!best || !best->feasible) {
        throw InfeasibleError("no feasible (u, v) point in the search region");
    }

    double du = step_of(config.u_range, config.n_u);
    double dv = step_of(config.v_range, config.n_v);
    for (int it = 0; it < config.refine_iters; ++it) {
        const Point inc = *best;
        const std::pair<double, double> cand[4] = {
            {inc.u - du, inc.v}, {inc.u + du, inc.v}, {inc.u, inc.v - dv}, {inc.u, inc.v + dv}};
        std::optional<Point> step_best;
        for (const auto& [u, v] : cand) {
            if ((u == inc.u && v == inc.v) || !inside(u, config.u_range) || !inside(v, config.v_range)) continue;
            Point p;
            if (auto hit = cache.find({u, v}); hit != cache.end()) {
                p = hit->second;
            } else {
                p = evaluate(u, v);
                record(p, "refine");
            }
            if (!step_best || better(p, *step_best)) step_best = p;
        }
        if (step_best && step_best->feasible && step_best->multiplier > inc.multiplier) {
            best = *step_best;
        } else {
            best = inc;
            du *= config.shrink;
            dv *= config.shrink;
        }
        result.trace.push_back(
            TraceEntry{"incumbent", best->u, best->v, best->feasible, best->kappa, best->multiplier});
    }

    result.best = GapParams{best->u, best->v, best->kappa, config.extended_u};
    result.gap_multiplier = best->multiplier;
    return result;
}

}  // namespace zerogap
