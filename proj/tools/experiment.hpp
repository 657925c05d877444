#pragma once

// Experiment configuration and the commands behind the CLI.
//
// Config document (JSON):
//
//   {
//     "weighting": {"preset": "uniform", "box": [0, 1, -1, 0], "value": 1}
//                | {"preset": "butterfly", "check_resolution": 100}
//                | {"grid": "mu.csv"}                      // relative to the config file
//                | {"support": [..4..], "gaussians": [{"amplitude": a, "center": [a, b],
//                                                     "sigma": [sa, sb], "clip": [..4..]}]},
//     "interface": {"preset": "virgin"}
//                | {"preset": "shelf", "shelf_beta": -800, "alpha_end": 1400}
//                | {"extrema": [..]} | {"corners": [{"alpha": a, "beta": b}, ..]},
//                  optional "repair": "alpha2" | "beta2" applies one pulse first,
//     "q": {"alpha2": 1400, "beta2": -850},
//     "controller": {"gamma_d": g | "gamma_d_fraction": f, "lambda": x | "auto",
//                    "w0": 0, "tolerance": t, "max_pulses": 200, "mode": "positive"},
//     "pulse": {"tau": 1, "sample_step": tau / 50, "zero_tail": 5, "oracle_step": tau / 1000},
//     "plan": [w0, w1, ..],                       // open-loop amplitudes (simulate, oracle-check)
//     "sweep": {"parameter": "gamma_d_fraction" | "gamma_d" | "lambda" | "lambda_fraction",
//               "values": [..]  or  "random": {"count": n, "lo": a, "hi": b}},
//     "resolution": 512, "oracle_n": 300, "seed": 0
//   }

#include "preisach/interface_json.hpp"
#include "preisach/preisach.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace experiment {

using json = nlohmann::json;
namespace fs = std::filesystem;
using namespace preisach;

enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kConfigError = 2,
    kDegenerateBounds = 3,
    kMaxPulses = 4,
    kOracleMismatch = 5,
};

struct GainSetting {
    bool automatic = true;
    double value = 0.0;
};

struct SweepSetting {
    std::string parameter;
    std::vector<double> values;
};

struct ExperimentConfig {
    ExperimentConfig(WeightingField m, MemoryInterface i, QRegion region)
        : mu(std::move(m)), iface0(std::move(i)), q(region) {}

    WeightingField mu;
    MemoryInterface iface0;
    QRegion q;
    std::optional<double> gamma_d;
    std::optional<double> gamma_d_fraction;
    GainSetting lambda;
    double w0 = 0.0;
    std::optional<double> tolerance;
    int max_pulses = 200;
    SignMode mode = SignMode::positive;
    double tau = 1.0;
    double sample_step = 0.02;
    int zero_tail = 5;
    double oracle_step = 0.001;
    std::vector<double> plan;
    std::optional<SweepSetting> sweep;
    int resolution = kDefaultScanResolution;
    int oracle_n = 300;
    std::uint64_t seed = 0;
};

namespace detail {

inline Box box_from(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 4)
        throw ConfigError(std::string(what) + " must be [alpha_lo, alpha_hi, beta_lo, beta_hi]");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
}

inline PlanePoint pair_from(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2) throw ConfigError(std::string(what) + " must be a pair [alpha, beta]");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline WeightingField load_weighting(const json& w, const fs::path& base_dir) {
    if (w.contains("grid")) {
        fs::path p = w.at("grid").get<std::string>();
        if (p.is_relative()) p = base_dir / p;
        return read_grid_csv_file(p.string());
    }
    if (w.contains("gaussians")) {
        if (!w.contains("support")) throw ConfigError("analytic weighting needs \"support\"");
        const Box support = box_from(w.at("support"), "weighting.support");
        std::vector<GaussianComponent> comps;
        for (const auto& g : w.at("gaussians")) {
            const PlanePoint sigma = pair_from(g.at("sigma"), "gaussian sigma");
            comps.push_back({g.at("amplitude").get<double>(), pair_from(g.at("center"), "gaussian center"),
                             sigma.alpha, sigma.beta,
                             g.contains("clip") ? box_from(g.at("clip"), "gaussian clip") : support});
        }
        return GaussianMixture(support, std::move(comps));
    }
    const std::string preset = w.value("preset", "");
    if (preset == "uniform") {
        const Box box = w.contains("box") ? box_from(w.at("box"), "weighting.box") : Box{0.0, 1.0, -1.0, 0.0};
        return uniform_field(box, w.value("value", 1.0));
    }
    if (preset == "butterfly") {
        ButterflySpec spec;
        spec.check_resolution = w.value("check_resolution", spec.check_resolution);
        return make_butterfly(spec);
    }
    throw ConfigError("weighting needs \"grid\", \"gaussians\", or preset \"uniform\" / \"butterfly\"");
}

inline MemoryInterface load_interface(const json& j, const Box& box, const QRegion& q) {
    MemoryInterface iface = MemoryInterface::virgin(box);
    if (j.contains("extrema")) {
        iface = MemoryInterface::from_extrema(j.at("extrema").get<std::vector<double>>(), box);
    } else if (j.contains("corners")) {
        iface = interface_from_json(j.at("corners"), box);
    } else {
        const std::string preset = j.value("preset", "virgin");
        if (preset == "shelf")
            iface = MemoryInterface::shelf(j.value("shelf_beta", -800.0), j.value("alpha_end", 1400.0), box);
        else if (preset != "virgin")
            throw ConfigError("unknown interface preset '" + preset + "'");
    }
    if (j.contains("repair")) {
        const std::string r = j.at("repair").get<std::string>();
        if (r == "alpha2")
            iface = apply_pulse(iface, q.alpha2);
        else if (r == "beta2")
            iface = apply_pulse(iface, q.beta2);
        else
            throw ConfigError("interface.repair must be \"alpha2\" or \"beta2\"");
    }
    return iface;
}

inline std::string fmt(double v) {
    if (!std::isfinite(v)) throw Error("non-finite value in output");
    return format_real(v);
}

inline void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << text;
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace detail

inline ExperimentConfig parse_config(const json& doc, const fs::path& base_dir) {
    try {
        if (!doc.is_object()) throw ConfigError("config must be a JSON object");
        if (!doc.contains("weighting")) throw ConfigError("config needs a \"weighting\" section");
        if (!doc.contains("q")) throw ConfigError("config needs a \"q\" section");
        const QRegion q(doc.at("q").at("alpha2").get<double>(), doc.at("q").at("beta2").get<double>());
        WeightingField mu = detail::load_weighting(doc.at("weighting"), base_dir);
        MemoryInterface iface =
            detail::load_interface(doc.value("interface", json::object()), mu.support(), q);
        ExperimentConfig cfg(std::move(mu), std::move(iface), q);

        const json c = doc.value("controller", json::object());
        if (c.contains("gamma_d")) cfg.gamma_d = c.at("gamma_d").get<double>();
        if (c.contains("gamma_d_fraction")) cfg.gamma_d_fraction = c.at("gamma_d_fraction").get<double>();
        if (cfg.gamma_d && cfg.gamma_d_fraction)
            throw ConfigError("give either controller.gamma_d or controller.gamma_d_fraction, not both");
        if (c.contains("lambda")) {
            const auto& l = c.at("lambda");
            if (l.is_string()) {
                if (l.get<std::string>() != "auto") throw ConfigError("controller.lambda must be a number or \"auto\"");
            } else {
                cfg.lambda = {false, l.get<double>()};
            }
        }
        cfg.w0 = c.value("w0", 0.0);
        if (c.contains("tolerance")) cfg.tolerance = c.at("tolerance").get<double>();
        cfg.max_pulses = c.value("max_pulses", 200);
        const std::string mode = c.value("mode", "positive");
        if (mode == "negative")
            cfg.mode = SignMode::negative;
        else if (mode != "positive")
            throw ConfigError("controller.mode must be \"positive\" or \"negative\"");

        const json p = doc.value("pulse", json::object());
        cfg.tau = p.value("tau", 1.0);
        if (!(cfg.tau > 0.0)) throw ConfigError("pulse.tau must be positive");
        cfg.sample_step = p.value("sample_step", cfg.tau / 50.0);
        cfg.zero_tail = p.value("zero_tail", 5);
        cfg.oracle_step = p.value("oracle_step", cfg.tau / 1000.0);
        if (cfg.zero_tail < 0) throw ConfigError("pulse.zero_tail must be nonnegative");
        samples_per_pulse(cfg.tau, cfg.sample_step);
        samples_per_pulse(cfg.tau, cfg.oracle_step);

        if (doc.contains("plan")) cfg.plan = doc.at("plan").get<std::vector<double>>();
        if (doc.contains("sweep")) {
            const auto& s = doc.at("sweep");
            SweepSetting sw{s.at("parameter").get<std::string>(), {}};
            if (sw.parameter != "gamma_d" && sw.parameter != "gamma_d_fraction" && sw.parameter != "lambda" &&
                sw.parameter != "lambda_fraction")
                throw ConfigError("sweep.parameter must be gamma_d, gamma_d_fraction, lambda or lambda_fraction");
            if (s.contains("values")) sw.values = s.at("values").get<std::vector<double>>();
            cfg.sweep = std::move(sw);
        }
        cfg.resolution = doc.value("resolution", kDefaultScanResolution);
        cfg.oracle_n = doc.value("oracle_n", 300);
        cfg.seed = doc.value("seed", std::uint64_t{0});
        if (cfg.resolution < 1) throw ConfigError("resolution must be positive");
        if (cfg.oracle_n < 2) throw ConfigError("oracle_n must be at least 2");
        return cfg;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

/// Fills sweep values drawn from the seed when the config asks for random ones.
inline void draw_sweep_values(ExperimentConfig& cfg, const json& doc) {
    if (!cfg.sweep || !doc.contains("sweep") || !doc.at("sweep").contains("random")) return;
    const auto& r = doc.at("sweep").at("random");
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> dist(r.at("lo").get<double>(), r.at("hi").get<double>());
    const int count = r.at("count").get<int>();
    for (int i = 0; i < count; ++i) cfg.sweep->values.push_back(dist(rng));
}

/// Reads and parses a config file. `seed` overrides the document's seed
/// before any random sweep values are drawn.
inline ExperimentConfig load_config(const fs::path& path, std::optional<std::uint64_t> seed = std::nullopt) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config: " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ConfigError("config is not valid JSON: " + std::string(e.what()));
    }
    auto cfg = parse_config(doc, path.parent_path());
    if (seed) cfg.seed = *seed;
    try {
        draw_sweep_values(cfg, doc);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return cfg;
}

struct BoundsReport {
    SectorBounds bounds;
    RemnantExtrema extrema;
    double max_gain = 0.0;
};

inline BoundsReport compute_bounds(const ExperimentConfig& cfg) {
    BoundsReport r{sector_bounds(cfg.mu, cfg.q, cfg.resolution), remnant_extrema(cfg.mu, cfg.iface0, cfg.q), 0.0};
    r.max_gain = max_gain(r.bounds, cfg.mode);
    return r;
}

inline json bounds_json(const BoundsReport& r) {
    const auto& b = r.bounds;
    return {{"gamma1_plus", b.gamma1_plus},       {"gamma2_plus", b.gamma2_plus},
            {"gamma1_minus", b.gamma1_minus},     {"gamma2_minus", b.gamma2_minus},
            {"gamma1_plus_q", b.gamma1_plus_q},   {"gamma2_plus_q", b.gamma2_plus_q},
            {"gamma1_minus_q", b.gamma1_minus_q}, {"gamma2_minus_q", b.gamma2_minus_q},
            {"gamma_max", r.extrema.gamma_max},   {"gamma_min", r.extrema.gamma_min},
            {"max_gain", r.max_gain}};
}

inline json cmd_bounds(const ExperimentConfig& cfg) {
    auto j = bounds_json(compute_bounds(cfg));
    for (const auto& [k, v] : j.items())
        if (!std::isfinite(v.get<double>())) throw Error("non-finite bound " + k);
    return j;
}

/// Controller settings resolved against the weighting.
inline ControllerConfig resolve_controller(const ExperimentConfig& cfg, const BoundsReport& r) {
    ControllerConfig c;
    c.q = cfg.q;
    c.w0 = cfg.w0;
    c.tolerance = cfg.tolerance;
    c.max_pulses = cfg.max_pulses;
    c.mode = cfg.mode;
    c.resolution = cfg.resolution;
    c.bounds = r.bounds;
    c.lambda = cfg.lambda.automatic ? 0.95 * r.max_gain : cfg.lambda.value;
    if (cfg.gamma_d)
        c.gamma_d = *cfg.gamma_d;
    else if (cfg.gamma_d_fraction)
        c.gamma_d = r.extrema.gamma_min + *cfg.gamma_d_fraction * (r.extrema.gamma_max - r.extrema.gamma_min);
    else
        throw ConfigError("controller needs gamma_d or gamma_d_fraction");
    return c;
}

inline std::string trace_csv(const ControlTrace& t) {
    std::ostringstream out;
    out << "k,w_k,gamma_k,e_k,clamped\n";
    for (const auto& r : t.records)
        out << r.k << ',' << detail::fmt(r.w) << ',' << detail::fmt(r.gamma) << ',' << detail::fmt(r.e) << ','
            << (r.clamped ? 1 : 0) << '\n';
    return out.str();
}

inline std::string signal_csv(const std::vector<SignalPoint>& s) {
    std::ostringstream out;
    out << "t,u,y\n";
    for (const auto& p : s) out << detail::fmt(p.t) << ',' << detail::fmt(p.u) << ',' << detail::fmt(p.y) << '\n';
    return out.str();
}

struct ControlOutcome {
    ControlTrace trace;
    ControllerConfig controller;
    json summary;
};

inline ControlOutcome run_control(const ExperimentConfig& cfg, const BoundsReport& r) {
    const auto ctrl = resolve_controller(cfg, r);
    auto trace = run_controller(cfg.mu, cfg.iface0, ctrl);
    const auto& last = trace.records.back();
    json summary{{"converged", trace.converged()},
                 {"status", trace.converged() ? "converged" : "max_pulses"},
                 {"pulses", trace.records.size()},
                 {"final_k", last.k},
                 {"final_w", last.w},
                 {"final_gamma", last.gamma},
                 {"final_e", last.e},
                 {"gamma_d", ctrl.gamma_d},
                 {"lambda", trace.lambda},
                 {"lambda_max", trace.lambda_max},
                 {"gamma_max", trace.gamma_max},
                 {"gamma_min", trace.gamma_min},
                 {"tolerance", trace.tolerance},
                 {"clamped_updates", std::count_if(trace.records.begin(), trace.records.end(),
                                                   [](const PulseRecord& p) { return p.clamped; })}};
    return {std::move(trace), ctrl, std::move(summary)};
}

/// Runs the controller and writes trace.csv, signal.csv, summary.json and
/// interface.json into `out`. The dense signal covers the run plus
/// `zero_tail` zero-amplitude pulses.
inline int cmd_control(const ExperimentConfig& cfg, const fs::path& out) {
    const auto r = compute_bounds(cfg);
    auto outcome = run_control(cfg, r);
    fs::create_directories(out);
    auto amps = outcome.trace.amplitudes();
    amps.insert(amps.end(), static_cast<std::size_t>(cfg.zero_tail), 0.0);
    const auto signal = simulate_output(cfg.mu, cfg.iface0, render_signal({cfg.tau, amps}, cfg.sample_step));
    outcome.summary["final_output"] = signal.back().y;
    detail::write_text(out / "trace.csv", trace_csv(outcome.trace));
    detail::write_text(out / "signal.csv", signal_csv(signal));
    detail::write_text(out / "summary.json", detail::dump(outcome.summary));
    detail::write_text(out / "interface.json", detail::dump(interface_to_json(outcome.trace.final_interface)));
    return outcome.trace.converged() ? kOk : kMaxPulses;
}

/// Open-loop run of `plan`: remnants.csv (k,w_k,gamma_k), signal.csv and the
/// final interface.
inline int cmd_simulate(const ExperimentConfig& cfg, const fs::path& out) {
    if (cfg.plan.empty()) throw ConfigError("simulate needs a non-empty \"plan\"");
    fs::create_directories(out);
    std::ostringstream rem;
    rem << "k,w_k,gamma_k\n";
    MemoryInterface iface = cfg.iface0;
    for (std::size_t k = 0; k < cfg.plan.size(); ++k) {
        auto [g, next] = remnant(cfg.mu, iface, cfg.plan[k]);
        iface = std::move(next);
        rem << k << ',' << detail::fmt(cfg.plan[k]) << ',' << detail::fmt(g) << '\n';
    }
    const auto signal = simulate_output(cfg.mu, cfg.iface0, render_signal({cfg.tau, cfg.plan}, cfg.sample_step));
    detail::write_text(out / "remnants.csv", rem.str());
    detail::write_text(out / "signal.csv", signal_csv(signal));
    detail::write_text(out / "interface.json", detail::dump(interface_to_json(iface)));
    return kOk;
}

struct OracleComparison {
    int n = 0;
    double max_deviation = 0.0;  ///< max |exact - oracle| / normaliser over pulse ends
};

/// Per-pulse remnants from the exact engine and from relay lattices of the
/// given sizes, sampled at every pulse end.
inline std::vector<OracleComparison> compare_with_oracle(const WeightingField& mu, const MemoryInterface& iface0,
                                                         const std::vector<double>& amplitudes, double tau,
                                                         double step, std::vector<int> sizes, double normaliser) {
    const auto samples = render_signal({tau, amplitudes}, step);
    const long m = samples_per_pulse(tau, step);
    std::vector<double> exact;
    MemoryInterface iface = iface0;
    exact.push_back(evaluate_output(mu, iface));
    for (double w : amplitudes) {
        auto r = remnant(mu, iface, w);
        exact.push_back(r.gamma);
        iface = std::move(r.next);
    }
    std::vector<double> u;
    u.reserve(samples.size());
    for (const auto& s : samples) u.push_back(s.u);
    std::vector<OracleComparison> out;
    for (int n : sizes) {
        const auto y = oracle_simulate(mu, iface0, u, n);
        double dev = 0.0;
        for (std::size_t k = 0; k < exact.size(); ++k)
            dev = std::max(dev, std::abs(y[k * static_cast<std::size_t>(m)] - exact[k]) / normaliser);
        out.push_back({n, dev});
    }
    return out;
}

/// Replays the plan (or, without a plan, the controller's amplitudes) through
/// relay lattices of size oracle_n / 2 and oracle_n. Passes when the
/// deviation at oracle_n is at most 1% of the remnant range.
inline int cmd_oracle_check(const ExperimentConfig& cfg, const fs::path& out, json& report) {
    const auto r = compute_bounds(cfg);
    std::vector<double> amps = cfg.plan;
    std::string source = "plan";
    if (amps.empty()) {
        amps = run_control(cfg, r).trace.amplitudes();
        source = "controller";
    }
    double range = r.extrema.gamma_max - r.extrema.gamma_min;
    if (!(range > 0.0)) range = cfg.mu.abs_mass();
    if (!(range > 0.0)) range = 1.0;
    const auto cmp =
        compare_with_oracle(cfg.mu, cfg.iface0, amps, cfg.tau, cfg.oracle_step, {cfg.oracle_n / 2, cfg.oracle_n}, range);
    const bool pass = cmp.back().max_deviation <= 0.01;
    report = json{{"source", source},
                  {"pulses", amps.size()},
                  {"normaliser", range},
                  {"n_coarse", cmp.front().n},
                  {"deviation_coarse", cmp.front().max_deviation},
                  {"n_fine", cmp.back().n},
                  {"deviation_fine", cmp.back().max_deviation},
                  {"shrink_factor", cmp.back().max_deviation > 0.0
                                        ? cmp.front().max_deviation / cmp.back().max_deviation
                                        : 0.0},
                  {"pass", pass}};
    fs::create_directories(out);
    detail::write_text(out / "oracle.json", detail::dump(report));
    return pass ? kOk : kOracleMismatch;
}

/// Runs the controller once per sweep value, concurrently, each in its own
/// directory out/run_NNN. Writes sweep.csv with one row per run.
inline int cmd_sweep(const ExperimentConfig& cfg, const fs::path& out) {
    if (!cfg.sweep || cfg.sweep->values.empty()) throw ConfigError("sweep needs a parameter and values");
    const auto r = compute_bounds(cfg);
    const auto& sw = *cfg.sweep;
    fs::create_directories(out);

    struct RunResult {
        bool converged = false;
        std::size_t pulses = 0;
        double final_e = 0.0;
        double lambda = 0.0;
        double gamma_d = 0.0;
        int code = kOk;
        std::string error;
    };
    std::vector<std::future<RunResult>> jobs;
    for (std::size_t i = 0; i < sw.values.size(); ++i) {
        ExperimentConfig run = cfg;
        const double v = sw.values[i];
        if (sw.parameter == "gamma_d") {
            run.gamma_d = v;
            run.gamma_d_fraction.reset();
        } else if (sw.parameter == "gamma_d_fraction") {
            run.gamma_d.reset();
            run.gamma_d_fraction = v;
        } else if (sw.parameter == "lambda") {
            run.lambda = {false, v};
        } else {
            run.lambda = {false, v * r.max_gain};
        }
        std::ostringstream name;
        name << "run_" << std::setw(3) << std::setfill('0') << i;
        const fs::path dir = out / name.str();
        jobs.push_back(std::async(std::launch::async, [run = std::move(run), dir, &r]() {
            RunResult res;
            try {
                auto outcome = run_control(run, r);
                fs::create_directories(dir);
                detail::write_text(dir / "trace.csv", trace_csv(outcome.trace));
                detail::write_text(dir / "summary.json", detail::dump(outcome.summary));
                res.converged = outcome.trace.converged();
                res.pulses = outcome.trace.records.size();
                res.final_e = outcome.trace.records.back().e;
                res.lambda = outcome.trace.lambda;
                res.gamma_d = outcome.controller.gamma_d;
                res.code = res.converged ? kOk : kMaxPulses;
            } catch (const Error& e) {
                res.code = kConfigError;
                res.error = e.what();
            }
            return res;
        }));
    }
    std::ostringstream csv;
    csv << "index,parameter,value,gamma_d,lambda,converged,pulses,final_e,exit_code\n";
    int worst = kOk;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const auto res = jobs[i].get();
        worst = std::max(worst, res.code);
        csv << i << ',' << sw.parameter << ',' << detail::fmt(sw.values[i]) << ',';
        if (res.error.empty())
            csv << detail::fmt(res.gamma_d) << ',' << detail::fmt(res.lambda) << ',' << (res.converged ? 1 : 0) << ','
                << res.pulses << ',' << detail::fmt(res.final_e);
        else
            csv << ",,0,0,";
        csv << ',' << res.code << '\n';
    }
    detail::write_text(out / "sweep.csv", csv.str());
    return worst;
}

}  // namespace experiment
