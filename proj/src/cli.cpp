#include "zerogap/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>
#include <cstdio>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "zerogap/closed_forms.hpp"
#include "zerogap/errors.hpp"
#include "zerogap/gap_inequality.hpp"
#include "zerogap/moment_oracle.hpp"
#include "zerogap/optimizer.hpp"

namespace zerogap {
namespace {

using Json = nlohmann::ordered_json;

enum class Format { text, json, csv };

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

const char* boolstr(bool b) { return b ? "true" : "false"; }

std::vector<double> parse_list(const std::string& text, const char* what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const double x = std::stod(item, &used);
            if (used != item.size() && item.find_first_not_of(" \t", used) != std::string::npos) throw 0;
            out.push_back(x);
        } catch (...) {
            throw DomainError(std::string("cannot parse ") + what + " entry '" + item + "'");
        }
    }
    if (out.empty()) throw DomainError(std::string(what) + " is empty");
    return out;
}

std::pair<double, double> parse_pair(const std::string& text, const char* what) {
    const auto v = parse_list(text, what);
    if (v.size() != 2) throw DomainError(std::string(what) + " needs exactly two comma-separated values");
    return {v[0], v[1]};
}

class Clock {
public:
    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

Json envelope(const std::string& command, Precision precision) {
    Json j;
    j["command"] = command;
    j["version"] = tool_version;
    j["precision"] = to_string(precision);
    return j;
}

void emit_json(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

// ---- check ---------------------------------------------------------------

struct CheckArgs {
    double u = 0, v = 0, kappa = 0;
    bool extended_u = false;
};

int cmd_check(const CheckArgs& a, Format format, Precision precision, std::ostream& out) {
    Clock clock;
    const GapParams p{a.u, a.v, a.kappa, a.extended_u};
    const GapVerdict v = check(p, precision);
    const double ms = clock.elapsed_ms();
    switch (format) {
        case Format::json: {
            Json j = envelope("check", precision);
            j["inputs"] = {{"u", a.u}, {"v", a.v}, {"kappa", a.kappa}, {"extended_u", a.extended_u}};
            j["outputs"] = {{"holds", v.holds},       {"A_kappa", v.lhs},
                            {"phi", v.rhs},           {"margin", v.margin},
                            {"gap_multiplier", v.gap_multiplier}};
            j["timing_ms"] = ms;
            emit_json(out, j);
            break;
        }
        case Format::csv:
            out << "u,v,kappa,extended_u,holds,A_kappa,phi,margin,gap_multiplier\n"
                << num(a.u) << ',' << num(a.v) << ',' << num(a.kappa) << ',' << boolstr(a.extended_u) << ','
                << boolstr(v.holds) << ',' << num(v.lhs) << ',' << num(v.rhs) << ',' << num(v.margin) << ','
                << num(v.gap_multiplier) << '\n';
            break;
        case Format::text:
            out << "check u=" << num(a.u) << " v=" << num(a.v) << " kappa=" << num(a.kappa)
                << " extended_u=" << boolstr(a.extended_u) << " precision=" << to_string(precision) << '\n'
                << "holds           " << boolstr(v.holds) << '\n'
                << "A_kappa         " << num(v.lhs) << '\n'
                << "phi             " << num(v.rhs) << '\n'
                << "margin          " << num(v.margin) << '\n'
                << "gap_multiplier  " << num(v.gap_multiplier) << '\n'
                << "time_ms         " << num(ms) << '\n';
            break;
    }
    return v.holds ? exit_ok : exit_fails;
}

// ---- verify-oracle -------------------------------------------------------

struct VerifyArgs {
    std::string kappa_list = "0.5,1,2,5,8.69";
    std::string u_list = "0.02,0.05,0.0909";
    double tol = 1e-8;
    std::string window;
    bool serial = false;
};

Window parse_window(const std::string& text) {
    Window w;
    if (text.empty()) return w;
    const auto v = parse_list(text, "--window");
    if (v.size() != 2 && v.size() != 4) throw DomainError("--window takes lmin,lmax or lmin,lmax,Lmin,Lmax");
    for (double x : v) {
        if (x != std::floor(x)) throw DomainError("--window entries must be integers");
    }
    w.lambda_min = static_cast<int>(v[0]);
    w.lambda_max = static_cast<int>(v[1]);
    if (v.size() == 4) {
        w.log_min = static_cast<int>(v[2]);
        w.log_max = static_cast<int>(v[3]);
    }
    if (w.lambda_min > 0 || w.lambda_max < 0 || w.log_min > 0 || w.log_max < 11) {
        throw DomainError("--window must contain lambda^0 and L^0..L^11");
    }
    return w;
}

struct VerifyRow {
    Label label;
    double kappa, u;
    double oracle, oracle_imag, closed, abs_error, rel_error, window_delta;
    bool pass;
};

template <class Real>
void fill_rows(std::vector<VerifyRow>& rows, const Window& w, Execution exec) {
    Window deep = w;
    deep.lambda_min *= 2;
    deep.lambda_max *= 2;
    for_each_index(rows.size(), exec, [&](std::size_t i) {
        auto& r = rows[i];
        const auto z = evaluate_moment<Real>(r.label, r.kappa, r.u, OracleOptions{w, true});
        const auto z2 = evaluate_moment<Real>(r.label, r.kappa, r.u, OracleOptions{deep, true});
        const quad cf = eval_quad(r.label, r.kappa, r.u);
        const quad zr = static_cast<quad>(math::to_double(z.re));
        quad zq;
        quad z2q;
        if constexpr (std::is_same_v<Real, DoubleDouble>) {
            zq = z.re.to_quad();
            z2q = z2.re.to_quad();
        } else {
            zq = zr;
            z2q = z2.re;
        }
        r.oracle = math::to_double(z.re);
        r.oracle_imag = math::to_double(z.im);
        r.closed = static_cast<double>(cf);
        r.abs_error = static_cast<double>(fabsq(zq - cf));
        r.rel_error = cf != 0 ? static_cast<double>(fabsq((zq - cf) / cf)) : r.abs_error;
        r.window_delta = zq != 0 ? static_cast<double>(fabsq((z2q - zq) / zq)) : 0.0;
    });
}

int cmd_verify_oracle(const VerifyArgs& a, Format format, Precision precision, std::ostream& out,
                      std::ostream& err) {
    Clock clock;
    const auto kappas = parse_list(a.kappa_list, "--kappa-list");
    const auto us = parse_list(a.u_list, "--u-list");
    for (double k : kappas) {
        if (!(k != 0.0) || !std::isfinite(k)) throw DomainError("oracle requires kappa != 0");
    }
    for (double u : us) {
        if (!(u > 0.0 && u < 1.0)) throw DomainError("oracle requires 0 < u < 1");
    }
    if (!(a.tol > 0.0)) throw DomainError("--tol must be > 0");
    const Window w = parse_window(a.window);

    std::vector<VerifyRow> rows;
    for (Label l : all_labels) {
        for (double k : kappas) {
            for (double u : us) rows.push_back(VerifyRow{l, k, u, 0, 0, 0, 0, 0, 0, false});
        }
    }
    const Execution exec = a.serial ? Execution::serial : Execution::parallel;
    try {
        if (precision == Precision::extended) {
            fill_rows<DoubleDouble>(rows, w, exec);
        } else {
            fill_rows<double>(rows, w, exec);
        }
    } catch (const JetError& e) {
        err << "error: " << e.what() << "\n";
        if (e.kind() == JetError::Kind::window_underflow) {
            err << "suggestion: rerun with --window " << 2 * w.lambda_min << ',' << 2 * w.lambda_max << ','
                << 2 * w.log_min << ',' << w.log_max + 4 << '\n';
        }
        return exit_internal;
    }
    bool all_pass = true;
    for (auto& r : rows) {
        r.pass = r.abs_error <= a.tol * std::max(1.0, std::fabs(r.closed));
        all_pass = all_pass && r.pass;
    }
    // oracle(X)/oracle(A) for the two delegating labels.
    auto ratio = [&](const VerifyRow& r) -> double {
        if (r.label != Label::D && r.label != Label::E) return std::nan("");
        for (const auto& q : rows) {
            if (q.label == Label::A && q.kappa == r.kappa && q.u == r.u) return r.oracle / q.oracle;
        }
        return std::nan("");
    };
    const double ms = clock.elapsed_ms();

    if (format == Format::json) {
        Json j = envelope("verify-oracle", precision);
        j["inputs"] = {{"kappa_list", kappas},
                       {"u_list", us},
                       {"tol", a.tol},
                       {"window", {w.lambda_min, w.lambda_max, w.log_min, w.log_max}}};
        Json arr = Json::array();
        for (const auto& r : rows) {
            Json row = {{"label", to_string(r.label)},   {"kappa", r.kappa},         {"u", r.u},
                        {"oracle", r.oracle},            {"oracle_imag", r.oracle_imag},
                        {"closed_form", r.closed},       {"abs_error", r.abs_error}, {"rel_error", r.rel_error},
                        {"window_delta", r.window_delta}, {"pass", r.pass}};
            const double q = ratio(r);
            if (!std::isnan(q)) row["ratio_to_A"] = q;
            arr.push_back(row);
        }
        j["outputs"] = {{"all_pass", all_pass}, {"rows", arr}};
        j["timing_ms"] = ms;
        emit_json(out, j);
    } else {
        const char sep = format == Format::csv ? ',' : ' ';
        out << "label" << sep << "kappa" << sep << "u" << sep << "oracle" << sep << "oracle_imag" << sep
            << "closed_form" << sep << "abs_error" << sep << "rel_error" << sep << "window_delta" << sep
            << "ratio_to_A" << sep << "pass\n";
        for (const auto& r : rows) {
            const double q = ratio(r);
            out << to_string(r.label) << sep << num(r.kappa) << sep << num(r.u) << sep << num(r.oracle) << sep
                << num(r.oracle_imag) << sep << num(r.closed) << sep << num(r.abs_error) << sep
                << num(r.rel_error) << sep << num(r.window_delta) << sep << (std::isnan(q) ? "" : num(q)) << sep
                << boolstr(r.pass) << '\n';
        }
        if (format == Format::text) {
            out << "all_pass " << boolstr(all_pass) << "  rows " << rows.size() << "  time_ms " << num(ms) << '\n';
        }
    }
    return all_pass ? exit_ok : exit_fails;
}

// ---- table ---------------------------------------------------------------

struct TableRow {
    std::string scenario;
    double u, v;
    bool extended_u;
    double kappa;  // < 0: derive with sup_kappa
    double claimed;
};

int cmd_table(Format format, Precision precision, std::ostream& out) {
    const std::vector<TableRow> spec = {
        {"main", 0.0909, 2.13, false, 8.69, 2.766},
        {"small-u", 1e-6, 2.0, false, 8.264, 2.63},
        {"ext-0.4999", 0.4999, 2.68, true, 10.23, 3.25},
        {"ext-0.55", 0.55, 2.74, true, -1.0, 3.26},
        {"ext-0.9999", 0.9999, 3.0, true, -1.0, 3.05},
    };
    struct Out {
        const TableRow* row;
        double kappa;
        bool derived;
        GapVerdict verdict;
    };
    std::vector<Out> res;
    bool ok = true;
    for (const auto& r : spec) {
        SupKappaOptions opt;
        opt.precision = precision;
        const bool derived = r.kappa < 0;
        const double kappa = derived ? sup_kappa(r.u, r.v, r.extended_u, opt) : r.kappa;
        const GapVerdict v = check(GapParams{r.u, r.v, kappa, r.extended_u}, precision);
        ok = ok && v.holds && v.gap_multiplier >= r.claimed;
        res.push_back(Out{&r, kappa, derived, v});
    }
    if (format == Format::json) {
        Json j = envelope("table", precision);
        Json arr = Json::array();
        for (const auto& o : res) {
            arr.push_back({{"scenario", o.row->scenario},
                           {"u", o.row->u},
                           {"v", o.row->v},
                           {"kappa", o.kappa},
                           {"kappa_source", o.derived ? "derived" : "given"},
                           {"gap_multiplier", o.verdict.gap_multiplier},
                           {"holds", o.verdict.holds},
                           {"claimed_multiplier", o.row->claimed}});
        }
        j["outputs"] = {{"all_reproduced", ok}, {"rows", arr}};
        emit_json(out, j);
    } else {
        const char sep = format == Format::csv ? ',' : ' ';
        out << "scenario" << sep << "u" << sep << "v" << sep << "kappa" << sep << "kappa_source" << sep
            << "gap_multiplier" << sep << "holds" << sep << "claimed_multiplier\n";
        for (const auto& o : res) {
            out << o.row->scenario << sep << num(o.row->u) << sep << num(o.row->v) << sep << num(o.kappa) << sep
                << (o.derived ? "derived" : "given") << sep << num(o.verdict.gap_multiplier) << sep
                << boolstr(o.verdict.holds) << sep << num(o.row->claimed) << '\n';
        }
    }
    return ok ? exit_ok : exit_fails;
}

// ---- kappa-series --------------------------------------------------------

struct SeriesArgs {
    std::string coeff = "A";
    int order = 4;
    std::string u_rational;
};

int cmd_kappa_series(const SeriesArgs& a, Format format, std::ostream& out, std::ostream& err) {
    if (a.order < 0) throw DomainError("--order must be >= 0");
    std::vector<Label> labels;
    if (a.coeff == "all" || a.coeff == "ALL") {
        labels.assign(all_labels.begin(), all_labels.end());
    } else {
        labels.push_back(parse_label(a.coeff));
    }
    std::optional<mpq_class> u;
    if (!a.u_rational.empty()) {
        mpq_class q;
        if (q.set_str(a.u_rational, 10) != 0 || q.get_den() == 0) {
            throw DomainError("--u-rational must look like p/q");
        }
        q.canonicalize();
        if (q <= 0 || q > 1) throw DomainError("--u-rational must lie in (0, 1]");
        u = q;
    }
    bool clean = true;
    Json arr = Json::array();
    std::ostringstream text;
    if (format == Format::csv) text << "label,power,coefficient\n";
    for (Label l : labels) {
        const KappaSeries s = expand_series(l, a.order, false);
        const std::size_t bad = s.negative_nonzero_count();
        clean = clean && bad == 0;
        auto coeff_str = [&](int k) { return u ? s.evaluate_u(k, *u).get_str() : s.coefficient(k).to_string(); };
        if (format == Format::json) {
            Json coeffs = Json::array();
            for (int k = 0; k <= a.order; ++k) coeffs.push_back({{"power", k}, {"coefficient", coeff_str(k)}});
            Json neg = Json::array();
            for (const auto& [k, p] : s.negative_part()) {
                if (!p.is_zero()) neg.push_back({{"power", k}, {"coefficient", p.to_string()}});
            }
            arr.push_back({{"label", to_string(l)},
                           {"negative_powers_nonzero", bad},
                           {"negative_terms", neg},
                           {"coefficients", coeffs}});
        } else if (format == Format::csv) {
            for (const auto& [k, p] : s.negative_part()) {
                if (!p.is_zero()) text << to_string(l) << ',' << k << ',' << p.to_string() << '\n';
            }
            for (int k = 0; k <= a.order; ++k) text << to_string(l) << ',' << k << ',' << coeff_str(k) << '\n';
        } else {
            text << "label " << to_string(l) << ", order " << a.order;
            if (u) text << ", u = " << u->get_str();
            text << '\n';
            if (bad == 0) {
                text << "negative powers: 0 (exact)\n";
            } else {
                text << "negative powers: " << bad << " NONZERO\n";
                for (const auto& [k, p] : s.negative_part()) {
                    if (!p.is_zero()) text << "  kappa^" << k << ": " << p.to_string() << '\n';
                }
            }
            for (int k = 0; k <= a.order; ++k) text << "kappa^" << k << ": " << coeff_str(k) << '\n';
        }
    }
    if (format == Format::json) {
        Json j = envelope("kappa-series", Precision::extended);
        j.erase("precision");
        j["precision"] = "exact";
        j["inputs"] = {{"coeff", a.coeff}, {"order", a.order}, {"u_rational", u ? u->get_str() : ""}};
        j["outputs"] = {{"cancellation_exact", clean}, {"series", arr}};
        emit_json(out, j);
    } else {
        out << text.str();
    }
    if (!clean) {
        err << "error: nonzero coefficient at a negative kappa power (closed-form transcription error)\n";
        return exit_internal;
    }
    return exit_ok;
}

// ---- optimize ------------------------------------------------------------

struct OptimizeArgs {
    std::string u_range, v_range, grid = "16,16";
    int refine = 30;
    bool extended_u = false;
    std::vector<std::string> seeds;
    double tol = 1e-6;
    bool serial = false;
};

int cmd_optimize(const OptimizeArgs& a, Format format, Precision precision, std::ostream& out) {
    Clock clock;
    SearchConfig c;
    c.extended_u = a.extended_u;
    if (a.extended_u) {
        c.u_range = {0.4, 0.6};
        c.v_range = {2.5, 2.9};
    }
    if (!a.u_range.empty()) c.u_range = parse_pair(a.u_range, "--u-range");
    if (!a.v_range.empty()) c.v_range = parse_pair(a.v_range, "--v-range");
    const auto g = parse_list(a.grid, "--grid");
    if (g.size() > 2) throw DomainError("--grid takes n or n_u,n_v");
    for (double x : g) {
        if (x != std::floor(x) || x < 1 || x > 10000) throw DomainError("--grid entries must be positive integers");
    }
    c.n_u = static_cast<int>(g[0]);
    c.n_v = static_cast<int>(g.size() == 2 ? g[1] : g[0]);
    c.refine_iters = a.refine;
    for (const auto& s : a.seeds) c.seeds.push_back(parse_pair(s, "--seed"));
    c.kappa.tol = a.tol;
    c.kappa.precision = precision;
    c.execution = a.serial ? Execution::serial : Execution::parallel;

    const SearchResult r = optimize(c);
    const double ms = clock.elapsed_ms();
    if (format == Format::json) {
        Json j = envelope("optimize", precision);
        j["inputs"] = {{"u_range", {c.u_range.first, c.u_range.second}},
                       {"v_range", {c.v_range.first, c.v_range.second}},
                       {"grid", {c.n_u, c.n_v}},
                       {"refine_iters", c.refine_iters},
                       {"extended_u", c.extended_u},
                       {"seeds", Json(c.seeds)},
                       {"tol", c.kappa.tol}};
        Json trace = Json::array();
        for (const auto& t : r.trace) {
            trace.push_back({{"phase", t.phase},
                             {"u", t.u},
                             {"v", t.v},
                             {"feasible", t.feasible},
                             {"kappa", t.kappa},
                             {"multiplier", t.multiplier}});
        }
        j["outputs"] = {{"best", {{"u", r.best.u}, {"v", r.best.v}, {"kappa", r.best.kappa}}},
                        {"gap_multiplier", r.gap_multiplier},
                        {"trace", trace}};
        j["timing_ms"] = ms;
        emit_json(out, j);
    } else if (format == Format::csv) {
        out << "phase,u,v,feasible,kappa,multiplier\n";
        for (const auto& t : r.trace) {
            out << t.phase << ',' << num(t.u) << ',' << num(t.v) << ',' << boolstr(t.feasible) << ','
                << num(t.kappa) << ',' << num(t.multiplier) << '\n';
        }
        out << "best," << num(r.best.u) << ',' << num(r.best.v) << ",true," << num(r.best.kappa) << ','
            << num(r.gap_multiplier) << '\n';
    } else {
        out << "best u          " << num(r.best.u) << '\n'
            << "best v          " << num(r.best.v) << '\n'
            << "sup kappa       " << num(r.best.kappa) << '\n'
            << "gap_multiplier  " << num(r.gap_multiplier) << '\n'
            << "evaluations     " << r.trace.size() << " trace entries\n"
            << "time_ms         " << num(ms) << '\n';
    }
    return exit_ok;
}

// ---- a3 ------------------------------------------------------------------

int cmd_a3(long long prime_limit, Format format, std::ostream& out) {
    if (prime_limit < 2) throw DomainError("--prime-limit must be >= 2");
    Clock clock;
    const A3Result r = a3(static_cast<std::uint64_t>(prime_limit));
    const double ms = clock.elapsed_ms();
    const double sixth = sixth_moment_factor * r.value;
    if (format == Format::json) {
        Json j = envelope("a3", Precision::extended);
        j["inputs"] = {{"prime_limit", r.prime_limit}};
        j["outputs"] = {{"a3", r.value},
                        {"tail_bound", r.tail_bound},
                        {"prime_count", r.prime_count},
                        {"sixth_moment_constant", sixth}};
        j["timing_ms"] = ms;
        emit_json(out, j);
    } else if (format == Format::csv) {
        out << "prime_limit,prime_count,a3,tail_bound,sixth_moment_constant\n"
            << r.prime_limit << ',' << r.prime_count << ',' << num(r.value) << ',' << num(r.tail_bound) << ','
            << num(sixth) << '\n';
    } else {
        out << "a3 (p <= " << r.prime_limit << ", " << r.prime_count << " primes)  " << num(r.value) << '\n'
            << "tail bound      " << num(r.tail_bound) << '\n'
            << "(42/9!)*a3      " << num(sixth) << '\n';
    }
    return exit_ok;
}

Format parse_format(const std::string& s) {
    if (s == "text") return Format::text;
    if (s == "json") return Format::json;
    if (s == "csv") return Format::csv;
    throw DomainError("unknown format '" + s + "'");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Shifted-moment coefficients, gap inequality and parameter search", "zerogap"};
    app.require_subcommand(1);
    app.set_version_flag("--version", tool_version);

    std::string format_text = "text";
    std::string precision_text = "standard";
    auto add_common = [&](CLI::App* sub, const char* default_format) {
        format_text = default_format;
        sub->add_option("--format", format_text, "text, json or csv")
            ->check(CLI::IsMember({"text", "json", "csv"}));
        sub->add_option("--precision", precision_text, "standard or extended")
            ->check(CLI::IsMember({"standard", "extended"}));
    };

    CheckArgs ca;
    auto* check_cmd = app.add_subcommand("check", "test the gap inequality at (u, v, kappa)");
    check_cmd->add_option("--u", ca.u)->required();
    check_cmd->add_option("--v", ca.v)->required();
    check_cmd->add_option("--kappa", ca.kappa)->required();
    check_cmd->add_flag("--extended-u", ca.extended_u, "allow 0 < u < 1");

    VerifyArgs va;
    auto* verify_cmd = app.add_subcommand("verify-oracle", "compare the swap-sum oracle with the closed forms");
    verify_cmd->add_option("--kappa-list", va.kappa_list, "comma-separated kappa values")->capture_default_str();
    verify_cmd->add_option("--u-list", va.u_list, "comma-separated u values")->capture_default_str();
    verify_cmd->add_option("--tol", va.tol, "pass if |oracle - closed| <= tol*max(1,|closed|)")->capture_default_str();
    verify_cmd->add_option("--window", va.window, "lambda_min,lambda_max[,L_min,L_max]");
    verify_cmd->add_flag("--serial", va.serial, "disable the parallel kernel");

    auto* table_cmd = app.add_subcommand("table", "reproduction rows for the published parameter choices");

    SeriesArgs sa;
    auto* series_cmd = app.add_subcommand("kappa-series", "exact kappa-Taylor coefficients");
    series_cmd->add_option("--coeff", sa.coeff, "A..J or all")->capture_default_str();
    series_cmd->add_option("--order", sa.order)->capture_default_str();
    series_cmd->add_option("--u-rational", sa.u_rational, "evaluate at u = p/q");

    OptimizeArgs oa;
    auto* opt_cmd = app.add_subcommand("optimize", "search (u, v) for the largest certified multiplier");
    opt_cmd->add_option("--u-range", oa.u_range, "low,high");
    opt_cmd->add_option("--v-range", oa.v_range, "low,high");
    opt_cmd->add_option("--grid", oa.grid, "n or n_u,n_v")->capture_default_str();
    opt_cmd->add_option("--refine", oa.refine)->capture_default_str();
    opt_cmd->add_flag("--extended-u", oa.extended_u);
    opt_cmd->add_option("--seed", oa.seeds, "u,v (repeatable)");
    opt_cmd->add_option("--tol", oa.tol, "bisection tolerance in kappa")->capture_default_str();
    opt_cmd->add_flag("--serial", oa.serial, "disable the parallel grid kernel");

    long long prime_limit = 1000000;
    auto* a3_cmd = app.add_subcommand("a3", "Euler product a3 with tail bound");
    a3_cmd->add_option("--prime-limit", prime_limit)->capture_default_str();

    for (auto* sub : {check_cmd, verify_cmd, series_cmd, opt_cmd, a3_cmd}) add_common(sub, "text");
    add_common(table_cmd, "csv");
    format_text.clear();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return exit_invalid;
    }

    try {
        const Precision precision = parse_precision(precision_text);
        auto fmt = [&](const char* fallback) { return parse_format(format_text.empty() ? fallback : format_text); };
        if (check_cmd->parsed()) return cmd_check(ca, fmt("text"), precision, out);
        if (verify_cmd->parsed()) return cmd_verify_oracle(va, fmt("text"), precision, out, err);
        if (table_cmd->parsed()) return cmd_table(fmt("csv"), precision, out);
        if (series_cmd->parsed()) return cmd_kappa_series(sa, fmt("text"), out, err);
        if (opt_cmd->parsed()) return cmd_optimize(oa, fmt("text"), precision, out);
        if (a3_cmd->parsed()) return cmd_a3(prime_limit, fmt("text"), out);
    } catch (const DomainError& e) {
        err << "invalid input: " << e.what() << '\n';
        return exit_invalid;
    } catch (const InfeasibleError& e) {
        err << "infeasible: " << e.what() << '\n';
        return exit_fails;
    } catch (const ScanRangeError& e) {
        err << "out of range: " << e.what() << '\n';
        return exit_fails;
    } catch (const TranscriptionError& e) {
        err << "internal consistency failure: " << e.what() << '\n';
        return exit_internal;
    } catch (const JetError& e) {
        err << "internal consistency failure: " << e.what() << '\n';
        return exit_internal;
    }
    return exit_invalid;
}

}  // namespace zerogap
