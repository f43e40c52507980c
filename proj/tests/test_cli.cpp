#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "besselstop/cli.hpp"

using namespace besselstop;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "besselstop");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream is(text);
    for (std::string l; std::getline(is, l);) out.push_back(l);
    return out;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("boundary envelope") {
    const auto r = invoke({"boundary", "--alpha", "3", "--n", "1"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    for (const char* key : {"tool_version", "config", "results", "timing"}) CHECK(j.contains(key));
    CHECK(j["results"]["Z"].get<double>() == doctest::Approx(2.2602).epsilon(1e-4));
    CHECK(std::abs(j["results"]["C"].get<double>() - 1.50339538) <= 1e-6);
    CHECK(j["results"]["margin"].get<double>() == doctest::Approx(1.26).epsilon(1e-2));
    CHECK(j["config"]["seed"].get<std::uint64_t>() == 20240601u);
    CHECK(config_from_json(j["config"]).alpha == 3.0);
    CHECK(to_json(config_from_json(j["config"])) == j["config"]);
}

TEST_CASE("value command") {
    const auto r = invoke({"value", "--alpha", "1", "--n", "1", "--t0", "0", "--q0", "0", "--no-timing"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["results"]["U"].get<double>() == doctest::Approx(0.60653).epsilon(1e-5));
    CHECK(j["timing"].is_null());
}

TEST_CASE("usage errors exit 2") {
    CHECK(invoke({"boundary", "--alpha", "-1", "--n", "1"}).code == 2);
    CHECK(invoke({"frobnicate"}).code == 2);
    CHECK(invoke({"boundary", "--config", "x.json"}).code == 2);
    CHECK(invoke({"boundary", "--format", "xml"}).code == 2);
    const auto scheme = invoke({"simulate", "--alpha", "2.5", "--scheme", "exact", "--paths", "100"});
    CHECK(scheme.code == 2);
    CHECK(json::parse(scheme.err)["error"]["kind"] == "usage");
}

TEST_CASE("boundary curve CSV") {
    const auto r = invoke({"boundary", "--alpha", "3", "--n", "1", "--format", "csv", "--t-points", "5"});
    REQUIRE(r.code == 0);
    const auto l = lines(r.out);
    REQUIRE(l.size() == 7);
    CHECK(l[0].rfind("# config ", 0) == 0);
    CHECK(l[1] == "t,z_q,x_boundary,value_at_zero");
    CHECK(l[2] == "0,2.260197658,1.503395376,0.9711974211");
    CHECK(l[6] == "1,0,0,0");
}

TEST_CASE("sweep table is deterministic and flags the candidate") {
    const std::vector<std::string> args{"sweep", "--alpha", "3", "--n", "1", "--paths", "2000",
                                        "--steps", "200", "--format", "csv", "--no-timing"};
    const auto a = invoke(args);
    const auto b = invoke(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    const auto l = lines(a.out);
    REQUIRE(l.size() == 7);
    CHECK(l[1].rfind("multiplier,Z_level,mean,stderr,ci_lo,ci_hi,stop_fraction,candidate", 0) == 0);
    CHECK(l[4].find(",true,") != std::string::npos);
    CHECK(l[2].find(",false,") != std::string::npos);
}

TEST_CASE("JSON schema per command") {
    struct Case {
        std::vector<std::string> args;
        std::vector<const char*> keys;
    };
    const std::vector<Case> cases{
        {{"coeffs", "--alpha", "3", "--n", "1"}, {"order", "ymax", "eps", "coeffs"}},
        {{"simulate", "--paths", "500", "--steps", "100"},
         {"mean", "stderr", "n_paths", "ci95", "stop_fraction", "scheme", "Z", "U_star"}},
        {{"dp-oracle", "--alpha", "1", "--n", "1", "--lattice-t-steps", "400", "--lattice-q-steps", "200"},
         {"value_at_origin", "U_star", "relative_difference", "lattice", "boundary"}},
        {{"ode-oracle", "--alpha", "7", "--n", "2"}, {"Z_ode", "Z_series", "difference", "max_local_error"}},
        {{"verify-appendix"}, {"checks", "summary"}}};
    for (const auto& c : cases) {
        CAPTURE(c.args[0]);
        const auto r = invoke(c.args);
        REQUIRE(r.code == 0);
        const auto j = json::parse(r.out);
        CHECK(j["config"]["command"] == c.args[0]);
        for (const char* k : c.keys) CHECK_MESSAGE(j["results"].contains(k), k);
    }
}

TEST_CASE("CSV is locale independent") {
    std::locale::global(std::locale(""));
    const auto r = invoke({"coeffs", "--alpha", "3", "--n", "1", "--format", "csv"});
    std::locale::global(std::locale::classic());
    const auto l = lines(r.out);
    REQUIRE(l.size() > 4);
    CHECK(l[1] == "k,A_k");
    CHECK(l[3] == "1,0.1666666667");
}

}  // TEST_SUITE
