#pragma once

// Synthetic butterfly weighting: one positive lobe on the sign-definite box Q
// and negative lobes kept off Q (alpha < 0 or beta > 0).
//
// Defaults are in volts on a +/-1500 V support with Q = [0, 1400] x [-850, 0].
// The positive lobe is wide in alpha and narrow in beta, which keeps the local
// remnant slope along the shelf at roughly 45% of the larger Q sector bound.
// That ratio lets the recursive update converge from below without
// overshooting for every admissible gain.

#include "preisach/errors.hpp"
#include "preisach/gaussian_mixture.hpp"
#include "preisach/sector_bounds.hpp"

#include <vector>

namespace preisach {

struct ButterflySpec {
    Box support{-1500.0, 1500.0, -1500.0, 1500.0};
    QRegion q{1400.0, -850.0};
    GaussianComponent positive{2.5e-3, {700.0, -425.0}, 3000.0, 300.0, {0.0, 1400.0, -850.0, 0.0}};
    std::vector<GaussianComponent> negative{
        {-2.0e-3, {-600.0, -700.0}, 250.0, 250.0, {-1500.0, -50.0, -1500.0, -50.0}},
        {-2.0e-3, {800.0, 400.0}, 250.0, 200.0, {50.0, 1500.0, 50.0, 1500.0}},
    };
    int check_resolution = 100;
};

inline GaussianMixture make_butterfly(const ButterflySpec& spec = {}) {
    const Box qb = spec.q.box();
    if (!(spec.positive.amplitude > 0.0)) throw ConfigError("butterfly positive lobe needs amplitude > 0");
    if (!qb.contains(spec.positive.center)) throw ConfigError("butterfly positive lobe must be centred inside Q");
    std::vector<GaussianComponent> comps{spec.positive};
    for (const auto& n : spec.negative) {
        if (!(n.amplitude < 0.0)) throw ConfigError("butterfly negative lobes need amplitude < 0");
        comps.push_back(n);
    }
    GaussianMixture mix(spec.support, std::move(comps));
    if (!spec.support.contains(qb)) throw ConfigError("butterfly support must contain Q");
    if (!sign_definite_on(mix, spec.q, SignMode::positive, spec.check_resolution))
        throw ConfigError("butterfly negative lobes intrude into Q");
    return mix;
}

}  // namespace preisach
