// preisach_cli: bounds, control, simulate, oracle-check and sweep runs driven
// by a JSON config. See tools/experiment.hpp for the config keys.

#include "experiment.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr const char* kConfigHelp = R"(Config keys (JSON) and defaults:
  weighting   {"preset":"uniform","box":[0,1,-1,0],"value":1} | {"preset":"butterfly"}
              | {"grid":"file.csv"} | {"support":[..],"gaussians":[..]}
  interface   {"preset":"virgin"} (default) | {"preset":"shelf","shelf_beta":-800,"alpha_end":1400}
              | {"extrema":[..]} | {"corners":[..]}; optional "repair":"alpha2"|"beta2"
  q           {"alpha2":a,"beta2":b}  (required)
  controller  gamma_d | gamma_d_fraction (required for control), lambda: number | "auto" (default,
              0.95 * max gain), w0: 0, tolerance: 1e-6 * (gamma_max - gamma_min), max_pulses: 200,
              mode: "positive" | "negative"
  pulse       tau: 1, sample_step: tau/50, zero_tail: 5, oracle_step: tau/1000
  plan        open-loop amplitudes for simulate / oracle-check
  sweep       {"parameter":"gamma_d_fraction"|"gamma_d"|"lambda"|"lambda_fraction",
               "values":[..] | "random":{"count":n,"lo":a,"hi":b}}
  resolution: 512, oracle_n: 300, seed: 0

Exit codes: 0 ok, 1 failure, 2 config error, 3 degenerate bounds,
            4 max_pulses reached, 5 oracle mismatch.)";

struct Options {
    std::string config;
    std::string out = "out";
    std::optional<int> resolution;
    std::optional<int> oracle_n;
    std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* sub, Options& opt) {
    sub->add_option("--config", opt.config, "experiment config (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out, "output directory")->capture_default_str();
    sub->add_option("--resolution", opt.resolution, "sector-bound scan lines (default 512)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--oracle-n", opt.oracle_n, "relay lattice size (default 300)")->check(CLI::Range(2, 100000));
    sub->add_option("--seed", opt.seed, "seed for randomly drawn sweep values (default 0)");
}

experiment::ExperimentConfig load(const Options& opt) {
    auto cfg = experiment::load_config(opt.config, opt.seed);
    if (opt.resolution) cfg.resolution = *opt.resolution;
    if (opt.oracle_n) cfg.oracle_n = *opt.oracle_n;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Preisach remnant control experiments"};
    app.footer(kConfigHelp);
    app.require_subcommand(1);
    Options opt;
    auto* bounds = app.add_subcommand("bounds", "print sector bounds, remnant extrema and max gain as JSON");
    auto* control = app.add_subcommand("control", "run the remnant controller; write trace, signal and summary");
    auto* simulate = app.add_subcommand("simulate", "apply the open-loop pulse plan");
    auto* oracle = app.add_subcommand("oracle-check", "compare per-pulse remnants with a relay lattice");
    auto* sweep = app.add_subcommand("sweep", "run the controller over a list of gamma_d or lambda values");
    for (auto* s : {bounds, control, simulate, oracle, sweep}) add_common(s, opt);

    CLI11_PARSE(app, argc, argv);

    using namespace experiment;
    try {
        const auto cfg = load(opt);
        if (*bounds) {
            const auto j = cmd_bounds(cfg);
            std::cout << j.dump(2) << '\n';
            return kOk;
        }
        if (*control) {
            const int code = cmd_control(cfg, opt.out);
            std::cout << (code == kOk ? "converged" : "max_pulses reached") << "; outputs in " << opt.out << '\n';
            return code;
        }
        if (*simulate) return cmd_simulate(cfg, opt.out);
        if (*oracle) {
            json report;
            const int code = cmd_oracle_check(cfg, opt.out, report);
            std::cout << report.dump(2) << '\n';
            return code;
        }
        if (*sweep) return cmd_sweep(cfg, opt.out);
    } catch (const preisach::DegenerateBoundsError& e) {
        std::cerr << "degenerate bounds: " << e.what() << '\n';
        return kDegenerateBounds;
    } catch (const preisach::EmptyIntersectionError& e) {
        std::cerr << "degenerate bounds: " << e.what() << '\n';
        return kDegenerateBounds;
    } catch (const preisach::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const preisach::AdmissibilityError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFailure;
    }
    return kFailure;
}
