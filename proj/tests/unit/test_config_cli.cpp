#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "ppgeo/cli.hpp"
#include "ppgeo/config.hpp"
#include "ppgeo/errors.hpp"
#include "ppgeo/report_io.hpp"

using namespace ppgeo;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    auto p = fs::temp_directory_path() / ("ppgeo_unit_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), {}};
}

std::string error_of(const nlohmann::json& j) {
    try {
        (void)ExperimentConfig::from_json(j);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST_CASE("config defaults validate and round-trip through JSON") {
    for (int dim : {1, 2}) {
        const auto cfg = ExperimentConfig::defaults(dim);
        CHECK_NOTHROW(cfg.validate());
        const auto back = ExperimentConfig::from_json(nlohmann::json::parse(cfg.to_json().dump()));
        CHECK(back.to_json() == cfg.to_json());
    }
}

TEST_CASE("config errors name the offending key") {
    CHECK(error_of({{"dimension", 1}, {"bogus", 1}}).find("bogus") != std::string::npos);
    CHECK(error_of({{"seed", 1}}).find("dimension") != std::string::npos);
    CHECK(error_of({{"dimension", 3}}).find("dimension") != std::string::npos);
    CHECK(error_of({{"dimension", 1}, {"epsilon_schedule", {0.1, 0.2}}}).find("epsilon_schedule") !=
          std::string::npos);
    CHECK(error_of({{"dimension", 1}, {"p_values", {0.5}}}).find("p_values") != std::string::npos);
    CHECK(error_of({{"dimension", 1}, {"format_version", 2}}).find("format_version") != std::string::npos);
    CHECK(error_of({{"dimension", 1}, {"grid", {{"cells", 4}}}}).find("cells") != std::string::npos);
    const nlohmann::json bad_form = {
        {"dimension", 1}, {"potentials", {{{"name", "a"}, {"kind", "dual_closed_form"}, {"form", "nope"}}}}};
    CHECK(error_of(bad_form).find("nope") != std::string::npos);
    const nlohmann::json dangling = {{"dimension", 1},
                                     {"pairs", {{{"name", "x"}, {"first", "ramp_pair.0"}, {"second", "missing"}}}}};
    CHECK(error_of(dangling).find("missing") != std::string::npos);
    const nlohmann::json wrong_dim = {{"dimension", 2}, {"class_body", {{"kind", "interval"}, {"lo", 0}, {"hi", 1}}}};
    CHECK_FALSE(error_of(wrong_dim).empty());
}

TEST_CASE("config pairs may refer to bundled potentials") {
    const nlohmann::json j = {
        {"dimension", 1},
        {"potentials", {{{"name", "tilt"}, {"kind", "dual_closed_form"}, {"form", "dual_linear"}, {"params", {1.0, 0.0}}}}},
        {"pairs", {{{"name", "same"}, {"first", "tilt"}, {"second", "ramp_pair.1"}}}}};
    const auto cfg = ExperimentConfig::from_json(j);
    const Setup s = cfg.setup();
    const auto pr = resolve_pair(cfg, s, "same");
    CHECK(dp_endpoint(pr.first.dual, pr.second.dual, 1.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS_AS(resolve_pair(cfg, s, "nowhere"), ConfigError);
    CHECK_THROWS_AS(resolve_potential(cfg, s, "ramp_pair.2"), ConfigError);
}

TEST_CASE("dual sample potentials accept inf") {
    auto cfg = ExperimentConfig::defaults(1);
    const Setup s = cfg.setup();
    nlohmann::json values = nlohmann::json::array();
    for (std::size_t k = 0; k < s.moment->size(); ++k) values.push_back(k + 1 == s.moment->size() ? nlohmann::json("inf") : nlohmann::json(0.0));
    const nlohmann::json j = {{"dimension", 1}, {"potentials", {{{"name", "s"}, {"kind", "dual_samples"}, {"values", values}}}}};
    const auto parsed = ExperimentConfig::from_json(j);
    const auto rp = resolve_potential(parsed, s, "s");
    CHECK(std::isinf(rp.dual.values().back()));
    values.erase(values.begin());
    const nlohmann::json short_j = {{"dimension", 1}, {"potentials", {{{"name", "s"}, {"kind", "dual_samples"}, {"values", values}}}}};
    CHECK_FALSE(error_of(short_j).empty());
}

TEST_CASE("report rounding and formatting") {
    CHECK(round12(0.1 + 0.2) == 0.3);
    CHECK(round12(1.0 / 3.0) == 0.333333333333);
    CHECK(format12(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(format12(-std::numeric_limits<double>::infinity()) == "-inf");
    CHECK(format12(std::nan("")) == "nan");
    const ojson j{{"a", std::numeric_limits<double>::infinity()}, {"b", {1.0 / 3.0}}};
    CHECK(dump_json(j) == "{\n  \"a\": \"inf\",\n  \"b\": [\n    0.333333333333\n  ]\n}\n");
}

TEST_CASE("cli exit codes") {
    const auto dir = scratch("codes").string();
    CHECK(cli({"--help"}).code == kExitOk);
    CHECK(cli({}).code == kExitConfigError);
    CHECK(cli({"distance"}).code == kExitConfigError);
    CHECK(cli({"--out", dir, "distance", "--pair", "nowhere"}).code == kExitConfigError);
    CHECK(cli({"--out", dir, "distance", "--pair", "ramp_pair", "--route", "nowhere"}).code == kExitConfigError);
    CHECK(cli({"--out", dir, "distance", "--pair", "ramp_pair", "--p", "0.5"}).code == kExitConfigError);
    CHECK(cli({"--config", dir + "/absent.json", "corpus"}).code == kExitConfigError);
    CHECK(cli({"--out", dir, "verify", "--suite", "nowhere"}).code == kExitConfigError);
    const auto empty = cli({"--out", dir, "verify", "--suite", ","});
    CHECK(empty.code == kExitOk);
    CHECK(empty.err.find("warning") != std::string::npos);
}

TEST_CASE("cli corpus filter") {
    const auto all = cli({"corpus"});
    CHECK(all.code == kExitOk);
    CHECK(all.out.find("crossing_pair") != std::string::npos);
    const auto some = cli({"corpus", "--filter", "ramp"});
    CHECK(some.out.find("ramp_pair") != std::string::npos);
    CHECK(some.out.find("crossing_pair") == std::string::npos);
    const auto none = cli({"corpus", "--filter", "zzz"});
    CHECK(none.code == kExitOk);
    CHECK(none.out.empty());
}

TEST_CASE("cli distance writes reports with the fixed CSV header") {
    const auto dir = scratch("distance");
    const auto r = cli({"--out", dir.string(), "distance", "--pair", "ramp_pair"});
    REQUIRE(r.code == kExitOk);
    const auto j = nlohmann::json::parse(slurp(dir / "distance_ramp_pair_epsilon_limit_p1.json"));
    CHECK(j["value"].get<double>() == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(j["pair"] == "ramp_pair");
    const auto csv = slurp(dir / "distance_ramp_pair_epsilon_limit_p1.csv");
    CHECK(csv.rfind(std::string(kDistanceCsvHeader) + "\n", 0) == 0);

    REQUIRE(cli({"--out", dir.string(), "distance", "--pair", "crossing_pair", "--p", "2"}).code == kExitOk);
    const auto j2 = nlohmann::json::parse(slurp(dir / "distance_crossing_pair_epsilon_limit_p2.json"));
    CHECK(j2["value"].get<double>() == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(2e-3));

    for (const char* route : {"endpoint", "dual_oracle", "energy_d1"}) {
        REQUIRE(cli({"--out", dir.string(), "distance", "--pair", "crossing_pair", "--route", route}).code == kExitOk);
        const auto jr = nlohmann::json::parse(
            slurp(dir / (std::string("distance_crossing_pair_") + route + "_p1.json")));
        CHECK(jr["value"].get<double>() == doctest::Approx(0.5).epsilon(1e-3));
    }
    CHECK(cli({"--out", dir.string(), "distance", "--pair", "crossing_pair", "--route", "energy_d1", "--p", "2"})
              .code == kExitConfigError);
    CHECK(cli({"--out", dir.string(), "distance", "--pair", "log_barrier_singular"}).code == kExitConfigError);
}

TEST_CASE("cli geodesic of the crossing pair is the midpoint at t = 1/2") {
    const auto dir = scratch("geodesic");
    REQUIRE(cli({"--out", dir.string(), "geodesic", "--pair", "crossing_pair", "--t", "0,0.5,1"}).code == kExitOk);
    std::istringstream csv(slurp(dir / "geodesic_crossing_pair.csv"));
    std::string line;
    std::getline(csv, line);
    CHECK(line == "x,u_t=0,u_t=0.5,u_t=1");
    bool seen = false;
    while (std::getline(csv, line)) {
        double x, a, b, c;
        char sep;
        std::istringstream row(line);
        row >> x >> sep >> a >> sep >> b >> sep >> c;
        if (x == 0.0) {
            seen = true;
            CHECK(b == doctest::Approx(-0.5).epsilon(1e-9));
        }
    }
    CHECK(seen);
    const auto j = nlohmann::json::parse(slurp(dir / "geodesic_crossing_pair.json"));
    CHECK(j["checks"]["chord_violation"].get<double>() <= 1e-9);
}

TEST_CASE("cli envelope, ma and energy") {
    const auto dir = scratch("potentials");
    REQUIRE(cli({"--out", dir.string(), "energy", "--potential", "ramp_pair.1"}).code == kExitOk);
    CHECK(nlohmann::json::parse(slurp(dir / "energy_ramp_pair.1.json"))["energy"].get<double>() ==
          doctest::Approx(-0.5).epsilon(1e-6));
    REQUIRE(cli({"--out", dir.string(), "ma", "--potential", "quadratic_pair.1"}).code == kExitOk);
    CHECK(nlohmann::json::parse(slurp(dir / "ma_quadratic_pair.1.json"))["total_mass"].get<double>() ==
          doctest::Approx(1.0).epsilon(1e-9));
    REQUIRE(cli({"--out", dir.string(), "envelope", "--potential", "wave_pair.0"}).code == kExitOk);
    const auto csv = slurp(dir / "envelope_wave_pair.0.csv");
    CHECK(csv.rfind("x,obstacle,envelope,contact\n", 0) == 0);
    CHECK(cli({"--out", dir.string(), "envelope", "--potential", "ramp_pair.1"}).code == kExitConfigError);
}

TEST_CASE("cli verify writes per-suite and aggregate reports") {
    const auto dir = scratch("verify");
    const auto r = cli({"--out", dir.string(), "verify", "--suite", "involution,mass"});
    CHECK(r.code == kExitOk);
    CHECK(r.out == "involution: PASS\nmass: PASS\noverall: PASS\n");
    CHECK(fs::exists(dir / "verify" / "involution.json"));
    const auto j = nlohmann::json::parse(slurp(dir / "verify_report.json"));
    CHECK(j["pass"] == true);
    CHECK(j["suites"].size() == 2);
    CHECK(j["config"]["dimension"] == 1);
}

TEST_CASE("cli distance of a potential to itself is zero") {
    const auto dir = scratch("self");
    const auto cfg = dir / "self.json";
    std::ofstream(cfg) << R"({"dimension": 1, "pairs": [{"name": "same", "first": "quadratic_pair.0", "second": "quadratic_pair.0"}]})";
    for (const char* route : {"epsilon_limit", "endpoint", "energy_d1"}) {
        REQUIRE(cli({"--config", cfg.string(), "--out", dir.string(), "distance", "--pair", "same", "--route", route})
                    .code == kExitOk);
        const auto j = nlohmann::json::parse(slurp(dir / (std::string("distance_same_") + route + "_p1.json")));
        CHECK(std::abs(j["value"].get<double>()) <= 1e-9);
    }
}

TEST_CASE("cli geodesic reproduces endpoints and constant pairs") {
    const auto dir = scratch("geodesic_constant");
    REQUIRE(cli({"--out", dir.string(), "geodesic", "--pair", "constant_pair", "--t", "0,0.5,1"}).code == kExitOk);
    std::istringstream csv(slurp(dir / "geodesic_constant_pair.csv"));
    std::string line;
    std::getline(csv, line);
    while (std::getline(csv, line)) {
        double x, a, b, c;
        char sep;
        std::istringstream row(line);
        row >> x >> sep >> a >> sep >> b >> sep >> c;
        CHECK(b - a == doctest::Approx(-0.5).epsilon(1e-9));
        CHECK(c - a == doctest::Approx(-1.0).epsilon(1e-9));
    }
}

TEST_CASE("cli corpus singular filter") {
    CHECK(cli({"corpus", "--filter", "singular"}).out.rfind("log_barrier_singular  [singular]\n", 0) == 0);
    const auto r = cli({"corpus", "--filter", "singular"});
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 2);
}

TEST_CASE("cli verify pythagorean on defaults passes") {
    const auto dir = scratch("pythagorean");
    CHECK(cli({"--out", dir.string(), "verify", "--suite", "pythagorean"}).code == kExitOk);
}
