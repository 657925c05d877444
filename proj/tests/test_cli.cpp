#include <catch2/catch_amalgamated.hpp>

#include "experiment.hpp"

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace experiment;
using Catch::Approx;

namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("preisach_cli_test_" + std::to_string(::getpid())) / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

fs::path write_config(const fs::path& dir, const json& doc) {
    const fs::path p = dir / "config.json";
    std::ofstream(p) << doc.dump(2);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args, const fs::path& log) {
    const std::string cmd = std::string(PREISACH_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::vector<std::vector<double>> read_csv(const fs::path& p, std::string& header) {
    std::ifstream in(p);
    std::getline(in, header);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(row);
    }
    return rows;
}

json uniform_doc() {
    return json::parse(R"({
      "weighting": {"preset": "uniform", "box": [0, 1, -1, 0]},
      "q": {"alpha2": 1, "beta2": -1},
      "controller": {"gamma_d": 0.5, "lambda": 0.5},
      "pulse": {"tau": 1, "sample_step": 0.05}
    })");
}

json butterfly_doc() {
    return json::parse(R"({
      "weighting": {"preset": "butterfly"},
      "interface": {"preset": "shelf", "shelf_beta": -800, "alpha_end": 1400},
      "q": {"alpha2": 1400, "beta2": -850},
      "controller": {"gamma_d_fraction": 0.6, "lambda": "auto"},
      "pulse": {"tau": 1, "sample_step": 0.05}
    })");
}

}  // namespace

TEST_CASE("bounds for the uniform preset", "[cli]") {
    const auto cfg = parse_config(uniform_doc(), ".");
    const auto j = cmd_bounds(cfg);
    CHECK(j.at("gamma2_plus_q").get<double>() == Approx(2.0));
    CHECK(j.at("gamma1_minus_q").get<double>() == Approx(2.0));
    CHECK(j.at("max_gain").get<double>() == Approx(1.0));
    CHECK(j.at("gamma_max").get<double>() == Approx(1.0));
    CHECK(j.at("gamma_min").get<double>() == Approx(-1.0));
}

TEST_CASE("bounds for the butterfly preset", "[cli]") {
    const auto j = cmd_bounds(parse_config(butterfly_doc(), "."));
    for (const auto& [k, v] : j.items()) CHECK(std::isfinite(v.get<double>()));
    CHECK(j.at("gamma_max").get<double>() > j.at("gamma_min").get<double>());
}

TEST_CASE("a zero grid has degenerate bounds", "[cli]") {
    const auto dir = scratch("zero");
    std::ofstream(dir / "zero.csv") << "alpha_lo,alpha_hi,beta_lo,beta_hi,n_alpha,n_beta\n0,1,-1,0,2,2\n0,0\n0,0\n";
    auto doc = uniform_doc();
    doc["weighting"] = {{"grid", "zero.csv"}};
    const auto cfg_path = write_config(dir, doc);
    CHECK_THROWS_AS(cmd_bounds(load_config(cfg_path)), DegenerateBoundsError);
    CHECK(run_cli("bounds --config " + cfg_path.string(), dir / "log.txt") == kDegenerateBounds);
}

TEST_CASE("uniform deadbeat control", "[cli]") {
    const auto dir = scratch("deadbeat");
    const auto cfg_path = write_config(dir, uniform_doc());
    REQUIRE(run_cli("control --config " + cfg_path.string() + " --out " + (dir / "out").string(), dir / "log.txt") ==
            kOk);
    std::string header;
    const auto rows = read_csv(dir / "out" / "trace.csv", header);
    CHECK(header == "k,w_k,gamma_k,e_k,clamped");
    REQUIRE(rows.size() == 2);
    CHECK(rows[1][0] == 1.0);
    CHECK(rows[1][1] == Approx(0.75));
    CHECK(std::abs(rows[1][3]) <= 1e-12);

    const auto signal = read_csv(dir / "out" / "signal.csv", header);
    CHECK(header == "t,u,y");
    // 2 pulses + 5 zero pulses at 20 samples each, plus the closing sample
    CHECK(signal.size() == 7 * 20 + 1);
    CHECK(signal.back()[2] == Approx(0.5));

    const auto summary = json::parse(slurp(dir / "out" / "summary.json"));
    CHECK(summary.at("converged").get<bool>());
    CHECK(summary.at("pulses").get<int>() == 2);
    CHECK(json::parse(slurp(dir / "out" / "interface.json")).is_array());
}

TEST_CASE("butterfly control converges with nonincreasing error", "[cli]") {
    const auto dir = scratch("butterfly");
    const auto cfg = parse_config(butterfly_doc(), ".");
    REQUIRE(cmd_control(cfg, dir) == kOk);
    std::string header;
    const auto rows = read_csv(dir / "trace.csv", header);
    REQUIRE(rows.size() <= 200);
    for (std::size_t k = 1; k < rows.size(); ++k) CHECK(std::abs(rows[k][3]) <= std::abs(rows[k - 1][3]) + 1e-12);
}

TEST_CASE("targets outside the remnant range are rejected", "[cli]") {
    const auto dir = scratch("badtarget");
    auto doc = uniform_doc();
    doc["controller"]["gamma_d"] = 3.0;
    const auto cfg_path = write_config(dir, doc);
    CHECK(run_cli("control --config " + cfg_path.string() + " --out " + (dir / "out").string(), dir / "log.txt") ==
          kConfigError);
    CHECK(slurp(dir / "log.txt").find("outside reachable range") != std::string::npos);
}

TEST_CASE("pulse budget exhaustion exits with its own code", "[cli]") {
    const auto dir = scratch("budget");
    auto doc = uniform_doc();
    doc["controller"] = {{"gamma_d", -0.2}, {"lambda", 0.05}, {"max_pulses", 3}};
    const auto cfg_path = write_config(dir, doc);
    CHECK(run_cli("control --config " + cfg_path.string() + " --out " + (dir / "out").string(), dir / "log.txt") ==
          kMaxPulses);
}

TEST_CASE("malformed configs exit with the config code", "[cli]") {
    const auto dir = scratch("malformed");
    std::ofstream(dir / "broken.json") << "{ not json";
    CHECK(run_cli("bounds --config " + (dir / "broken.json").string(), dir / "log.txt") == kConfigError);

    auto no_q = uniform_doc();
    no_q.erase("q");
    CHECK(run_cli("bounds --config " + write_config(dir, no_q).string(), dir / "log.txt") == kConfigError);

    auto bad_gain = uniform_doc();
    bad_gain["controller"]["lambda"] = "fast";
    CHECK_THROWS_AS(parse_config(bad_gain, "."), ConfigError);

    auto bad_step = uniform_doc();
    bad_step["pulse"]["sample_step"] = 0.3;
    CHECK_THROWS_AS(parse_config(bad_step, "."), ConfigError);

    auto bad_preset = uniform_doc();
    bad_preset["interface"] = {{"preset", "nope"}};
    CHECK_THROWS_AS(parse_config(bad_preset, "."), ConfigError);

    auto both = uniform_doc();
    both["controller"]["gamma_d_fraction"] = 0.5;
    CHECK_THROWS_AS(parse_config(both, "."), ConfigError);

    CHECK(run_cli("--help", dir / "help.txt") == 0);
    CHECK(slurp(dir / "help.txt").find("control") != std::string::npos);
    CHECK(run_cli("control --help", dir / "help.txt") == 0);
    CHECK(slurp(dir / "help.txt").find("max_pulses: 200") != std::string::npos);
    CHECK(run_cli("", dir / "log.txt") != 0);
}

TEST_CASE("oracle check on the uniform preset", "[cli][oracle]") {
    const auto dir = scratch("oracle");
    auto doc = uniform_doc();
    doc["plan"] = {0.6180339887, -0.4142135624, 0.3183098862, -0.1};
    json report;
    CHECK(cmd_oracle_check(parse_config(doc, "."), dir, report) == kOk);
    CHECK(report.at("deviation_fine").get<double>() <= 0.01);
    CHECK(report.at("shrink_factor").get<double>() >= 1.5);

    // controller trace replay
    json trace_report;
    CHECK(cmd_oracle_check(parse_config(uniform_doc(), "."), dir, trace_report) == kOk);
    CHECK(trace_report.at("source") == "controller");
    CHECK(trace_report.at("deviation_fine").get<double>() <= 0.01);

    // zero plan: only the initial-state quantisation remains
    doc["plan"] = {0.0, 0.0, 0.0};
    json zero;
    const auto cfg = parse_config(doc, ".");
    CHECK(cmd_oracle_check(cfg, dir, zero) == kOk);
    const double raw = zero.at("deviation_fine").get<double>() * zero.at("normaliser").get<double>();
    CHECK(raw <= 2.0 / cfg.oracle_n * cfg.mu.abs_mass());
}

TEST_CASE("open-loop simulation", "[cli]") {
    const auto dir = scratch("simulate");
    auto doc = uniform_doc();
    doc["plan"] = {0.75, -0.25};
    REQUIRE(cmd_simulate(parse_config(doc, "."), dir) == kOk);
    std::string header;
    const auto rem = read_csv(dir / "remnants.csv", header);
    CHECK(header == "k,w_k,gamma_k");
    REQUIRE(rem.size() == 2);
    CHECK(rem[0][2] == Approx(0.5));
    CHECK(rem[1][2] == Approx(0.125));
    const auto sig = read_csv(dir / "signal.csv", header);
    double lowest = 0.0;
    for (const auto& r : sig) lowest = std::min(lowest, r[1]);
    CHECK(lowest == -0.25);

    doc.erase("plan");
    CHECK_THROWS_AS(cmd_simulate(parse_config(doc, "."), dir), ConfigError);
}

TEST_CASE("sweeps fan out into per-run directories", "[cli]") {
    const auto dir = scratch("sweep");
    auto doc = butterfly_doc();
    doc["sweep"] = {{"parameter", "gamma_d_fraction"}, {"values", {0.2, 0.5, 0.8}}};
    REQUIRE(cmd_sweep(parse_config(doc, "."), dir / "a") == kOk);
    const auto text = slurp(dir / "a" / "sweep.csv");
    CHECK(text.rfind("index,parameter,value,gamma_d,lambda,converged,pulses,final_e,exit_code\n", 0) == 0);
    for (const char* run : {"run_000", "run_001", "run_002"}) CHECK(fs::exists(dir / "a" / run / "trace.csv"));

    // random values come from the seed
    doc["sweep"] = {{"parameter", "lambda_fraction"}, {"random", {{"count", 3}, {"lo", 0.2}, {"hi", 0.9}}}};
    doc["seed"] = 7;
    const auto cfg_path = write_config(dir, doc);
    REQUIRE(run_cli("sweep --config " + cfg_path.string() + " --out " + (dir / "b").string(), dir / "l1") == kOk);
    REQUIRE(run_cli("sweep --config " + cfg_path.string() + " --out " + (dir / "c").string(), dir / "l2") == kOk);
    REQUIRE(run_cli("sweep --config " + cfg_path.string() + " --seed 8 --out " + (dir / "d").string(), dir / "l3") ==
            kOk);
    CHECK(slurp(dir / "b" / "sweep.csv") == slurp(dir / "c" / "sweep.csv"));
    CHECK(slurp(dir / "b" / "sweep.csv") != slurp(dir / "d" / "sweep.csv"));
}

TEST_CASE("identical configs give byte-identical outputs with finite numbers", "[cli]") {
    const auto dir = scratch("repro");
    const auto cfg_path = write_config(dir, butterfly_doc());
    REQUIRE(run_cli("control --config " + cfg_path.string() + " --out " + (dir / "a").string(), dir / "l1") == kOk);
    REQUIRE(run_cli("control --config " + cfg_path.string() + " --out " + (dir / "b").string(), dir / "l2") == kOk);
    for (const char* f : {"trace.csv", "signal.csv", "summary.json", "interface.json"}) {
        CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));
    }
    for (const char* f : {"trace.csv", "signal.csv"}) {
        std::string header;
        for (const auto& row : read_csv(dir / "a" / f, header))
            for (double v : row) CHECK(std::isfinite(v));
    }
}
