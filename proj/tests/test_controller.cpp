#include <catch2/catch_amalgamated.hpp>

#include "preisach/preisach.hpp"
#include "test_support.hpp"

#include <cmath>
#include <vector>

using namespace preisach;
using Catch::Approx;

namespace {

const Box kUnitQ{0.0, 1.0, -1.0, 0.0};

ControllerConfig unit_config(double gamma_d, double lambda, double w0) {
    ControllerConfig cfg;
    cfg.gamma_d = gamma_d;
    cfg.lambda = lambda;
    cfg.w0 = w0;
    cfg.q = QRegion(1.0, -1.0);
    return cfg;
}

}  // namespace

TEST_CASE("deadbeat regulation of a uniform weighting", "[controller]") {
    const auto mu = uniform_field(kUnitQ);
    const auto trace = run_controller(mu, MemoryInterface::virgin(kUnitQ), unit_config(0.5, 0.5, 0.0));
    REQUIRE(trace.converged());
    REQUIRE(trace.records.size() == 2);
    CHECK(trace.records[0].e == Approx(-1.5));
    CHECK(trace.records[1].w == Approx(0.75));
    CHECK(trace.records[1].gamma == Approx(0.5));
    CHECK(std::abs(trace.records[1].e) <= 1e-12);
    CHECK(trace.lambda_max == Approx(1.0));
    CHECK(trace.gamma_max == Approx(1.0));
    CHECK(trace.gamma_min == Approx(-1.0));
    for (const auto& r : trace.records) CHECK(r.e == r.gamma - 0.5);

    SECTION("a new target from the reached state passes through the dead zone") {
        const auto next = run_controller(mu, trace.final_interface, unit_config(-0.5, 0.5, 0.75));
        REQUIRE(next.records.size() >= 4);
        CHECK(next.records[0].e == Approx(1.0));
        CHECK(next.records[1].w == Approx(0.25));
        CHECK(next.records[1].e == Approx(1.0));
        CHECK(next.records[2].w == Approx(-0.25));
        CHECK(next.records[2].gamma == Approx(0.125));
        CHECK(next.records[2].e == Approx(0.625));
        for (std::size_t k = 3; k < next.records.size(); ++k)
            CHECK(std::abs(next.records[k].e) < std::abs(next.records[k - 1].e));
        CHECK(next.converged());
    }
}

TEST_CASE("target equal to the first remnant stops at once", "[controller]") {
    const auto mu = uniform_field(kUnitQ);
    const auto iface = MemoryInterface::virgin(kUnitQ);
    const double g0 = remnant(mu, iface, 0.3).gamma;
    const auto trace = run_controller(mu, iface, unit_config(g0, 0.5, 0.3));
    REQUIRE(trace.records.size() == 1);
    CHECK(trace.converged());
    CHECK(trace.records[0].e == 0.0);
}

TEST_CASE("controller rejects invalid settings", "[controller]") {
    const auto mu = uniform_field(kUnitQ);
    const auto iface = MemoryInterface::virgin(kUnitQ);
    CHECK_THROWS_AS(run_controller(mu, iface, unit_config(1.5, 0.5, 0.0)), ConfigError);
    CHECK_THROWS_AS(run_controller(mu, iface, unit_config(0.0, 0.5, 1.5)), ConfigError);
    CHECK_THROWS_AS(run_controller(mu, iface, unit_config(0.0, 1.0, 0.0)), ConfigError);
    CHECK_THROWS_AS(run_controller(mu, iface, unit_config(0.0, 0.0, 0.0)), ConfigError);
    auto no_pulses = unit_config(0.0, 0.5, 0.0);
    no_pulses.max_pulses = 0;
    CHECK_THROWS_AS(run_controller(mu, iface, no_pulses), ConfigError);
    auto bad_tol = unit_config(0.0, 0.5, 0.0);
    bad_tol.tolerance = 0.0;
    CHECK_THROWS_AS(run_controller(mu, iface, bad_tol), ConfigError);

    const auto negative = uniform_field(kUnitQ, -1.0);
    CHECK_THROWS_AS(run_controller(negative, iface, unit_config(0.0, 0.5, 0.0)), ConfigError);

    const Box wide{-2.0, 2.0, -2.0, 2.0};
    CHECK_THROWS_AS(run_controller(uniform_field(wide), MemoryInterface::virgin(wide), unit_config(0.0, 0.5, 0.0)),
                    AdmissibilityError);
    CHECK_THROWS_AS(run_controller(uniform_field(kUnitQ, 0.0), iface, unit_config(0.0, 0.5, 0.0)),
                    DegenerateBoundsError);
}

TEST_CASE("negative weighting on Q uses the mirrored update", "[controller]") {
    const auto mu = uniform_field(kUnitQ, -1.0);
    auto cfg = unit_config(-0.5, 0.5, 0.0);
    cfg.mode = SignMode::negative;
    const auto trace = run_controller(mu, MemoryInterface::virgin(kUnitQ), cfg);
    REQUIRE(trace.converged());
    REQUIRE(trace.records.size() == 2);
    CHECK(trace.records[0].e == Approx(1.5));
    CHECK(trace.records[1].w == Approx(0.75));
    CHECK(std::abs(trace.records[1].e) <= 1e-12);
}

TEST_CASE("amplitude updates are clamped to Q", "[controller]") {
    const auto mu = uniform_field(kUnitQ);
    const auto trace = run_controller(mu, MemoryInterface::virgin(kUnitQ), unit_config(1.0, 0.9, 0.0));
    REQUIRE(trace.records.size() >= 2);
    CHECK(trace.records[1].clamped);
    CHECK(trace.records[1].w == 1.0);
    CHECK(trace.converged());
}

TEST_CASE("pulse budget exhaustion is reported in the trace", "[controller]") {
    const auto mu = uniform_field(kUnitQ);
    auto cfg = unit_config(-0.2, 0.05, 0.0);
    cfg.max_pulses = 3;
    const auto trace = run_controller(mu, MemoryInterface::virgin(kUnitQ), cfg);
    CHECK_FALSE(trace.converged());
    CHECK(trace.status == TraceStatus::max_pulses);
    CHECK(trace.records.size() == 3);
}

TEST_CASE("remnant persists under zero input", "[controller]") {
    const ButterflySpec spec;
    const auto mu = make_butterfly(spec);
    const auto iface0 = MemoryInterface::shelf(-800.0, 1400.0, spec.support);
    const auto ext = remnant_extrema(mu, iface0, spec.q);
    auto cfg = ControllerConfig{};
    cfg.q = spec.q;
    cfg.gamma_d = ext.gamma_min + 0.6 * (ext.gamma_max - ext.gamma_min);
    cfg.bounds = sector_bounds(mu, spec.q);
    cfg.lambda = 0.95 * max_gain(*cfg.bounds);
    const auto trace = run_controller(mu, iface0, cfg);
    REQUIRE(trace.converged());
    const double final_gamma = trace.records.back().gamma;

    auto iface = trace.final_interface;
    for (int k = 0; k < 5; ++k) {
        const auto r = remnant(mu, iface, 0.0);
        CHECK(r.gamma == Approx(final_gamma).margin(1e-12));
        iface = r.next;
    }
    // dense replay of the whole run plus the zero tail
    auto amps = trace.amplitudes();
    amps.insert(amps.end(), 5, 0.0);
    const auto signal = simulate_output(mu, iface0, render_signal({1.0, amps}, 0.02));
    const std::size_t boundary = trace.records.size() * 50;
    for (std::size_t i = boundary; i < signal.size(); ++i) CHECK(signal[i].y == Approx(final_gamma).margin(1e-12));
}

TEST_CASE("traces do not depend on the pulse period", "[controller]") {
    const ButterflySpec spec;
    const auto mu = make_butterfly(spec);
    const auto iface0 = MemoryInterface::shelf(-800.0, 1400.0, spec.support);
    const auto ext = remnant_extrema(mu, iface0, spec.q);
    auto cfg = ControllerConfig{};
    cfg.q = spec.q;
    cfg.gamma_d = ext.gamma_min + 0.3 * (ext.gamma_max - ext.gamma_min);
    cfg.bounds = sector_bounds(mu, spec.q);
    cfg.lambda = 0.5 * max_gain(*cfg.bounds);
    const auto trace = run_controller(mu, iface0, cfg);
    const auto amps = trace.amplitudes();
    const auto slow = simulate_output(mu, iface0, render_signal({1.0, amps}, 0.01));
    const auto fast = simulate_output(mu, iface0, render_signal({0.1, amps}, 0.002));
    for (std::size_t k = 0; k < trace.records.size(); ++k) {
        const double y_slow = slow[(k + 1) * 100].y;
        const double y_fast = fast[(k + 1) * 50].y;
        CHECK(y_slow == Approx(trace.records[k].gamma).margin(1e-12));
        CHECK(y_fast == Approx(trace.records[k].gamma).margin(1e-12));
        CHECK(slow[(k + 1) * 100].t == Approx(1.0 * (k + 1)));
        CHECK(fast[(k + 1) * 50].t == Approx(0.1 * (k + 1)));
    }
}

TEST_CASE("butterfly runs converge with nonincreasing error", "[controller][property]") {
    const ButterflySpec spec;
    const auto mu = make_butterfly(spec);
    // shelf on beta2: the first pulse already leaves the dead zone
    const auto iface0 = MemoryInterface::shelf(spec.q.beta2, spec.q.alpha2, spec.support);
    const auto bounds = sector_bounds(mu, spec.q);
    const double lmax = max_gain(bounds);
    const auto ext = remnant_extrema(mu, iface0, spec.q);
    testsupport::Rng rng(41);
    for (int run = 0; run < 10; ++run) {
        ControllerConfig cfg;
        cfg.q = spec.q;
        cfg.bounds = bounds;
        cfg.gamma_d = testsupport::uniform(rng, ext.gamma_min, ext.gamma_max);
        cfg.lambda = testsupport::uniform(rng, 0.1, 0.95) * lmax;
        const auto trace = run_controller(mu, iface0, cfg);
        CHECK(trace.converged());
        for (std::size_t k = 1; k < trace.records.size(); ++k)
            CHECK(std::abs(trace.records[k].e) <= std::abs(trace.records[k - 1].e) + 1e-12);
    }
}

TEST_CASE("an amplitude inside the dead zone holds the error constant", "[controller]") {
    // Shelf at -800 with beta2 = -850: targets just below the initial remnant
    // need w < -800, but the update creeps toward it by lambda * |e| per pulse.
    const ButterflySpec spec;
    const auto mu = make_butterfly(spec);
    const auto iface0 = MemoryInterface::shelf(-800.0, 1400.0, spec.support);
    const double g0 = evaluate_output(mu, iface0);
    const auto ext = remnant_extrema(mu, iface0, spec.q);
    ControllerConfig cfg;
    cfg.q = spec.q;
    cfg.bounds = sector_bounds(mu, spec.q);
    cfg.lambda = 0.5 * max_gain(*cfg.bounds);
    cfg.gamma_d = g0 - 0.5 * (g0 - ext.gamma_min);
    cfg.max_pulses = 50;
    const auto trace = run_controller(mu, iface0, cfg);
    CHECK_FALSE(trace.converged());
    for (const auto& r : trace.records) {
        CHECK(r.e == trace.records.front().e);
        CHECK(r.w > -800.0);
    }
}
