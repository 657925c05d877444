#pragma once

#include "preisach/errors.hpp"

#include <cmath>
#include <vector>

namespace preisach {

/// Train of triangular pulses: pulse k occupies [k tau, (k+1) tau] and peaks
/// at amplitudes[k] halfway through.
struct PulsePlan {
    double tau = 1.0;
    std::vector<double> amplitudes;

    double horizon() const noexcept { return tau * static_cast<double>(amplitudes.size()); }
};

/// Unit triangular pulse number k evaluated at time t.
inline double pulse_value(long k, double t, double tau) noexcept {
    const double start = static_cast<double>(k) * tau;
    const double peak = (static_cast<double>(k) + 0.5) * tau;
    const double end = (static_cast<double>(k) + 1.0) * tau;
    if (t >= start && t <= peak) return 2.0 / tau * (t - start);
    if (t > peak && t <= end) return 2.0 / tau * (end - t);
    return 0.0;
}

struct TimeSample {
    double t = 0.0;
    double u = 0.0;
};

/// Number of samples per pulse for a given step; must be even so that the
/// peak falls on a sample.
inline long samples_per_pulse(double tau, double step) {
    if (!(tau > 0.0)) throw ConfigError("pulse period tau must be positive");
    if (!(step > 0.0)) throw ConfigError("sample step must be positive");
    const double ratio = tau / step;
    const long m = std::lround(ratio);
    if (m < 2 || m % 2 != 0 || std::abs(ratio - static_cast<double>(m)) > 1e-9 * ratio)
        throw ConfigError("sample step must divide tau/2");
    return m;
}

/// Dense samples of the pulse train from t = 0 to the end of the last pulse.
/// Samples are placed per pulse, so the value at every boundary k*tau is an
/// exact zero and every peak is hit exactly.
inline std::vector<TimeSample> render_signal(const PulsePlan& plan, double sample_step) {
    const long m = samples_per_pulse(plan.tau, sample_step);
    std::vector<TimeSample> out;
    out.reserve(plan.amplitudes.size() * static_cast<std::size_t>(m) + 1);
    for (std::size_t k = 0; k < plan.amplitudes.size(); ++k) {
        const double w = plan.amplitudes[k];
        for (long j = 0; j < m; ++j) {
            const double t = (static_cast<double>(k) + static_cast<double>(j) / m) * plan.tau;
            const double phase = 2.0 * static_cast<double>(j <= m / 2 ? j : m - j) / static_cast<double>(m);
            out.push_back({t, w * phase});
        }
    }
    out.push_back({plan.horizon(), 0.0});
    return out;
}

}  // namespace preisach
