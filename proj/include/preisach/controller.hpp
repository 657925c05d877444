#pragma once

// Recursive set-point regulation of the remnant:
//     e_k     = gamma(w_k, I_k) - gamma_d
//     w_{k+1} = clamp(w_k - s * lambda * e_k, [beta2, alpha2])
// with s = +1 when mu >= 0 on Q and s = -1 when mu <= 0 on Q.

#include "preisach/density.hpp"
#include "preisach/errors.hpp"
#include "preisach/memory_interface.hpp"
#include "preisach/pulse.hpp"
#include "preisach/remnant.hpp"
#include "preisach/sector_bounds.hpp"
#include "preisach/staircase_integration.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace preisach {

struct ControllerConfig {
    double gamma_d = 0.0;
    double lambda = 0.0;
    double w0 = 0.0;
    QRegion q;
    /// Stop once |e_k| <= tolerance. Defaults to 1e-6 * (gamma_max - gamma_min).
    std::optional<double> tolerance;
    int max_pulses = 200;
    SignMode mode = SignMode::positive;
    int resolution = kDefaultScanResolution;
    /// Precomputed bounds; computed from mu when absent.
    std::optional<SectorBounds> bounds;
};

struct PulseRecord {
    int k = 0;
    double w = 0.0;
    double gamma = 0.0;
    double e = 0.0;
    bool clamped = false;  ///< w was clipped to [beta2, alpha2] by the update
};

enum class TraceStatus { converged, max_pulses };

struct ControlTrace {
    std::vector<PulseRecord> records;
    TraceStatus status = TraceStatus::max_pulses;
    double gamma_max = 0.0;
    double gamma_min = 0.0;
    double tolerance = 0.0;
    double lambda = 0.0;
    double lambda_max = 0.0;
    MemoryInterface final_interface;

    bool converged() const noexcept { return status == TraceStatus::converged; }
    std::vector<double> amplitudes() const {
        std::vector<double> w;
        w.reserve(records.size());
        for (const auto& r : records) w.push_back(r.w);
        return w;
    }
};

template <WeightingDensity W>
ControlTrace run_controller(const W& mu, const MemoryInterface& iface0, const ControllerConfig& cfg) {
    const QRegion& q = cfg.q;
    if (cfg.max_pulses < 1) throw ConfigError("max_pulses must be positive");
    if (!(cfg.w0 >= q.beta2 && cfg.w0 <= q.alpha2))
        throw ConfigError("w0 = " + std::to_string(cfg.w0) + " lies outside [beta2, alpha2]");
    if (!sign_definite_on(mu, q, cfg.mode))
        throw ConfigError(cfg.mode == SignMode::positive ? "mu takes negative values on Q"
                                                         : "mu takes positive values on Q");

    const auto ext = remnant_extrema(mu, iface0, q);
    const double lo = std::min(ext.gamma_min, ext.gamma_max);
    const double hi = std::max(ext.gamma_min, ext.gamma_max);
    const double slack = 1e-12 * (1.0 + std::abs(lo) + std::abs(hi));
    if (cfg.gamma_d < lo - slack || cfg.gamma_d > hi + slack)
        throw ConfigError("target remnant " + std::to_string(cfg.gamma_d) + " outside reachable range [" +
                          std::to_string(lo) + ", " + std::to_string(hi) + "]");

    const SectorBounds bounds = cfg.bounds ? *cfg.bounds : sector_bounds(mu, q, cfg.resolution);
    const double lambda_max = max_gain(bounds, cfg.mode);
    if (!(cfg.lambda > 0.0) || !(cfg.lambda < lambda_max))
        throw ConfigError("gain lambda = " + std::to_string(cfg.lambda) + " outside (0, " +
                          std::to_string(lambda_max) + ")");

    ControlTrace trace{.records = {},
                       .status = TraceStatus::max_pulses,
                       .gamma_max = ext.gamma_max,
                       .gamma_min = ext.gamma_min,
                       .tolerance = cfg.tolerance.value_or(1e-6 * (hi - lo)),
                       .lambda = cfg.lambda,
                       .lambda_max = lambda_max,
                       .final_interface = iface0};
    if (!(trace.tolerance > 0.0)) throw ConfigError("tolerance must be positive");
    const double sgn = cfg.mode == SignMode::positive ? 1.0 : -1.0;

    MemoryInterface iface = iface0;
    double w = cfg.w0;
    bool clamped = false;
    for (int k = 0; k < cfg.max_pulses; ++k) {
        auto [gamma, next] = remnant(mu, iface, w);
        iface = std::move(next);
        const double e = gamma - cfg.gamma_d;
        trace.records.push_back({k, w, gamma, e, clamped});
        if (std::abs(e) <= trace.tolerance) {
            trace.status = TraceStatus::converged;
            break;
        }
        const double raw = w - sgn * cfg.lambda * e;
        w = std::clamp(raw, q.beta2, q.alpha2);
        clamped = w != raw;
    }
    trace.final_interface = std::move(iface);
    return trace;
}

struct SignalPoint {
    double t = 0.0;
    double u = 0.0;
    double y = 0.0;
};

/// Output of the operator along a sampled input: the memory follows each
/// monotone piece between samples, so the result depends on the sample values
/// only, not on their timing.
template <WeightingDensity W>
std::vector<SignalPoint> simulate_output(const W& mu, const MemoryInterface& iface0,
                                         const std::vector<TimeSample>& input) {
    std::vector<SignalPoint> out;
    out.reserve(input.size());
    MemoryInterface iface = iface0;
    for (const auto& s : input) {
        iface = push_extremum(iface, s.u);
        out.push_back({s.t, s.u, evaluate_output(mu, iface)});
    }
    return out;
}

}  // namespace preisach
