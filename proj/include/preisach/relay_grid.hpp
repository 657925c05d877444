#pragma once

// Brute-force reference: an n x n lattice of relays over the weighting
// support, each switched sample by sample with strict comparisons
//   u > alpha -> +1,  u < beta -> -1,  otherwise hold.
// Relays sit at lattice cell centres with alpha >= beta; each carries the
// weighting mass of its cell within the half-plane. Relays of zero weight are
// dropped since they never affect the output.

#include "preisach/density.hpp"
#include "preisach/errors.hpp"
#include "preisach/memory_interface.hpp"

#include <span>
#include <vector>

namespace preisach {

class RelayGrid {
public:
    template <WeightingDensity W>
    RelayGrid(const W& mu, const MemoryInterface& init, int n) : n_(n) {
        if (n < 1) throw ConfigError("relay lattice size must be positive");
        const Box box = mu.support();
        const double da = box.width() / n, db = box.height() / n;
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < n; ++i) {
                const Box cell{box.alpha_lo + i * da, box.alpha_lo + (i + 1) * da, box.beta_lo + j * db,
                               box.beta_lo + (j + 1) * db};
                const PlanePoint p{0.5 * (cell.alpha_lo + cell.alpha_hi), 0.5 * (cell.beta_lo + cell.beta_hi)};
                if (!p.in_half_plane()) continue;
                const double w = cell.beta_hi <= cell.alpha_lo ? mu.rect_integral(cell) : mu.half_plane_integral(cell);
                if (w == 0.0) continue;
                alpha_.push_back(p.alpha);
                beta_.push_back(p.beta);
                weight_.push_back(w);
                state_.push_back(static_cast<signed char>(relay_state(p, init)));
            }
        }
    }

    int size() const noexcept { return n_; }
    std::size_t relay_count() const noexcept { return weight_.size(); }

    PlanePoint relay(std::size_t r) const noexcept { return {alpha_[r], beta_[r]}; }
    RelaySign state(std::size_t r) const noexcept { return static_cast<RelaySign>(state_[r]); }

    /// Applies one input sample and returns the output afterwards.
    double apply(double u) noexcept {
        double y = 0.0;
        const std::size_t n = weight_.size();
        for (std::size_t r = 0; r < n; ++r) {
            if (u > alpha_[r])
                state_[r] = 1;
            else if (u < beta_[r])
                state_[r] = -1;
            y += state_[r] * weight_[r];
        }
        return y;
    }

    double output() const noexcept {
        double y = 0.0;
        for (std::size_t r = 0; r < weight_.size(); ++r) y += state_[r] * weight_[r];
        return y;
    }

private:
    int n_;
    std::vector<double> alpha_;
    std::vector<double> beta_;
    std::vector<double> weight_;
    std::vector<signed char> state_;
};

/// Output at every input sample. The first sample is the input at t = 0;
/// relays whose thresholds bracket it keep the state given by `init`.
template <WeightingDensity W>
std::vector<double> oracle_simulate(const W& mu, const MemoryInterface& init, std::span<const double> u, int n) {
    RelayGrid grid(mu, init, n);
    std::vector<double> y;
    y.reserve(u.size());
    for (double v : u) y.push_back(grid.apply(v));
    return y;
}

}  // namespace preisach
