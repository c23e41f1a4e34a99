#include <catch2/catch_amalgamated.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "zerogap/cli.hpp"

using namespace zerogap;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

void require_round_trip(const std::string& text) {
    const auto j = nlohmann::ordered_json::parse(text);
    std::string again = j.dump(2);
    if (!text.empty() && text.back() == '\n') again += '\n';
    REQUIRE(again == text);
}

}  // namespace

TEST_CASE("check exit codes", "[cli]") {
    const Run ok = run({"check", "--u", "0.0909", "--v", "2.13", "--kappa", "8.69"});
    REQUIRE(ok.code == exit_ok);
    REQUIRE(ok.out.find("holds           true") != std::string::npos);

    REQUIRE(run({"check", "--u", "0.0909", "--v", "2.13", "--kappa", "20"}).code == exit_fails);

    const Run bad = run({"check", "--u", "0", "--v", "2", "--kappa", "8"});
    REQUIRE(bad.code == exit_invalid);
    REQUIRE_FALSE(bad.err.empty());

    REQUIRE(run({"check", "--u", "0.5", "--v", "2", "--kappa", "8"}).code == exit_invalid);
    REQUIRE(run({"check", "--u", "0.4999", "--v", "2.68", "--kappa", "10.23", "--extended-u"}).code == exit_ok);
    REQUIRE(run({"check", "--v", "2"}).code == exit_invalid);
    REQUIRE(run({"no-such-command"}).code == exit_invalid);
    REQUIRE(run({"--version"}).out.find(tool_version) != std::string::npos);
}

TEST_CASE("check json round-trips", "[cli]") {
    const Run r = run({"check", "--u", "0.0909", "--v", "2.13", "--kappa", "8.69", "--format", "json"});
    REQUIRE(r.code == exit_ok);
    require_round_trip(r.out);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["outputs"]["holds"] == true);
    REQUIRE(j["outputs"]["gap_multiplier"].get<double>() >= 2.766);
}

TEST_CASE("verify-oracle", "[cli]") {
    const Run r = run({"verify-oracle", "--kappa-list", "2,8.69", "--u-list", "0.0909", "--format", "json"});
    REQUIRE(r.code == exit_ok);
    require_round_trip(r.out);
    const auto j = nlohmann::json::parse(r.out);
    bool saw_d = false;
    for (const auto& row : j["outputs"]["rows"]) {
        if (row["label"] == "D") {
            saw_d = true;
            REQUIRE(std::abs(row["ratio_to_A"].get<double>() + 0.5) <= 1e-9);
        }
    }
    REQUIRE(saw_d);

    REQUIRE(run({"verify-oracle", "--kappa-list", "0"}).code == exit_invalid);

    const Run shallow = run({"verify-oracle", "--kappa-list", "2", "--u-list", "0.05", "--window", "-3,12"});
    REQUIRE(shallow.code == exit_internal);
    REQUIRE(shallow.err.find("window") != std::string::npos);
}

TEST_CASE("table is byte-stable", "[cli]") {
    const Run a = run({"table"});
    const Run b = run({"table"});
    REQUIRE(a.code == exit_ok);
    REQUIRE(a.out == b.out);
    REQUIRE(a.out.find("main,0.090899999999999995,2.1299999999999999,8.6899999999999995") != std::string::npos);
    REQUIRE(a.out.find("small-u,") != std::string::npos);
    REQUIRE(a.out.find("ext-0.9999,") != std::string::npos);

    const Run j = run({"table", "--format", "json"});
    require_round_trip(j.out);
    REQUIRE(j.out == run({"table", "--format", "json"}).out);
}

TEST_CASE("kappa-series", "[cli]") {
    const Run one = run({"kappa-series", "--coeff", "A", "--order", "4", "--u-rational", "1/1"});
    REQUIRE(one.code == exit_ok);
    REQUIRE(one.out.find("1/8640") != std::string::npos);

    const Run half = run({"kappa-series", "--coeff", "A", "--order", "0", "--u-rational", "1/2"});
    REQUIRE(half.code == exit_ok);
    REQUIRE(half.out.find("73/2211840") != std::string::npos);

    const Run all = run({"kappa-series", "--coeff", "all", "--order", "2"});
    REQUIRE(all.code == exit_ok);
    std::size_t count = 0;
    for (std::size_t p = all.out.find("negative powers: 0 (exact)"); p != std::string::npos;
         p = all.out.find("negative powers: 0 (exact)", p + 1)) {
        ++count;
    }
    REQUIRE(count == 10);

    const Run js = run({"kappa-series", "--coeff", "all", "--order", "2", "--format", "json"});
    require_round_trip(js.out);

    REQUIRE(run({"kappa-series", "--coeff", "Z"}).code == exit_invalid);
    REQUIRE(run({"kappa-series", "--u-rational", "1/0"}).code == exit_invalid);
}

TEST_CASE("optimize", "[cli]") {
    const Run r = run({"optimize", "--u-range", "0.0909,0.0909", "--v-range", "2.13,2.13", "--grid", "1", "--refine",
                       "0", "--format", "json"});
    REQUIRE(r.code == exit_ok);
    require_round_trip(r.out);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["outputs"]["best"]["u"].get<double>() == 0.0909);
    REQUIRE(j["outputs"]["best"]["v"].get<double>() == 2.13);

    REQUIRE(run({"optimize", "--u-range", "0.05,0.0909", "--v-range", "2,2.2", "--grid", "2", "--refine", "0",
                 "--tol", "1e-3", "--serial"})
                .code == exit_ok);
    REQUIRE(run({"optimize", "--u-range", "0.2,0.3"}).code == exit_invalid);
}

TEST_CASE("a3", "[cli]") {
    const Run r = run({"a3", "--prime-limit", "2", "--format", "json"});
    REQUIRE(r.code == exit_ok);
    require_round_trip(r.out);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["outputs"]["a3"].get<double>() == 0.203125);

    const Run big = run({"a3"});
    REQUIRE(big.code == exit_ok);
    REQUIRE(big.out.find("42/9!") != std::string::npos);
    REQUIRE(run({"a3", "--prime-limit", "1"}).code == exit_invalid);
}
