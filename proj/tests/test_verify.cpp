#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include "psys/bounds.hpp"
#include "psys/entropy_profile.hpp"
#include "psys/monitor.hpp"
#include "psys/pressure_law.hpp"
#include "psys/riccati.hpp"
#include "psys/solver.hpp"
#include "support.hpp"

using namespace psys;
using testsupport::rel_err;

namespace {

std::unique_ptr<PressureLaw> gamma_law(double gamma, double K = 1.0,
                                       double c_v = 1.0) {
    return make_pressure_law("gamma-law",
                             {{"K", K}, {"gamma", gamma}, {"c_v", c_v}});
}

} // namespace

TEST_CASE("pressure sandwich over a state box") {
    ConstantEntropy flat(0.0, 1.0);
    const StateBox box{0.5, 2.0, -1.0, 1.0};
    SUBCASE("gamma = 2: c h / p is identically 4") {
        auto law = gamma_law(2.0);
        const auto rep = check_pressure_sandwich(*law, flat, box, 24);
        CHECK(rep.passed);
        CHECK_FALSE(rep.hard_failure);
        CHECK(rep.upper_margin >= 0.0);
        CHECK(rep.lower_margin >= -1e-12);
        CHECK(rel_err(rep.tightest_k, 4.0) < 1e-6);
        CHECK(rel_err(rep.loosest_k, 4.0) < 1e-6);
    }
    SUBCASE("gamma = 3: ratio 3, entropy variation does not move it") {
        auto law = gamma_law(3.0);
        TanhEntropy profile(0.2, 0.0, 1.0, 1.0);
        const auto rep = check_pressure_sandwich(*law, profile, box, 24);
        CHECK(rep.passed);
        CHECK(rel_err(rep.tightest_k, 3.0) < 1e-6);
        CHECK(rel_err(rep.loosest_k, 3.0) < 1e-6);
    }
    SUBCASE("an undersized declared k fails the lower side") {
        auto law = gamma_law(2.0);
        auto constants = law->constants();
        constants.k = 2.0; // true ratio is 4
        law->set_constants(constants);
        const auto rep = check_pressure_sandwich(*law, flat, box, 16);
        CHECK_FALSE(rep.passed);
        CHECK_FALSE(rep.hard_failure); // upper side still holds
        CHECK(rep.lower_margin < 0.0);
        CHECK(rep.witness_tau_lower >= box.tau_lo);
        CHECK(rep.witness_tau_lower <= box.tau_hi);
    }
}

TEST_CASE("bound cascade") {
    SUBCASE("no entropy variation collapses the cascade exactly") {
        const auto b = bound_constants(4.0, 0.5, 0.5, 1.0, 1.0, 2.2, 1.7, 0.0);
        CHECK(b.n_s == 2.2);
        CHECK(b.n_r == 1.7);
        CHECK(b.n_s_robust == 2.2);
        CHECK(b.n_r_robust == 1.7);
        CHECK(b.k4 == 1.0);
        CHECK(b.k6 == 1.0);
    }
    SUBCASE("independent recomputation of every cascade constant") {
        const double k = 4.0, k1 = 0.5, k2 = 0.5;
        const double k_ml = 0.8, k_mr = 1.25, k_s = 3.0, k_r = 2.5, V = 0.4;
        const auto b = bound_constants(k, k1, k2, k_ml, k_mr, k_s, k_r, V);

        const double R = k_mr / k_ml;
        const double k3 = std::max(1.0 / (2.0 * k1), 1.0 / (2.0 * k * k2));
        const double k4 = std::max(std::pow(R, 1.0 / (2.0 * k * k1)),
                                   std::pow(R, 1.0 / (2.0 * k2)));
        const double k5 = std::max(std::pow(R, 1.0 / (2.0 * k * k1)) / (2.0 * k * k1),
                                   std::pow(R, 1.0 / (2.0 * k2)) / (2.0 * k2));
        const double k6 = std::max(std::pow(R, 1.0 / (2.0 * k1)),
                                   std::pow(R, 1.0 / (2.0 * k * k2)));
        const double k7 = std::max(1.0 / (2.0 * k * k1), 1.0 / (2.0 * k2));
        const double k8 = std::max(std::pow(R, 1.0 / (2.0 * k1)) / (2.0 * k1),
                                   std::pow(R, 1.0 / (2.0 * k * k2)) / (2.0 * k * k2));
        const double k9 = k3 * k4 + k5;
        const double k10 = std::max(1.0, k6);
        const double k11 = std::max(k6 * k7 + k8, k7 + k8);
        const double k12 = std::max(1.0, k4);
        const double k13 = std::max(k3 * k4 + k5, k3 + k5);
        const double gronwall = std::exp(k11 * k13 * V * V);
        const double n_s = k6 * k_s + k9 * k10 * k_r * V +
                           k9 * k11 * V *
                               (k12 * k_s * V + k10 * k13 * k_r * V * V) * gronwall;
        const double n_r = k6 * k_r + k9 * k10 * k_s * V +
                           k9 * k11 * V *
                               (k12 * k_r * V + k10 * k13 * k_s * V * V) * gronwall;

        CHECK(rel_err(b.k3, k3) < 1e-15);
        CHECK(rel_err(b.k4, k4) < 1e-15);
        CHECK(rel_err(b.k5, k5) < 1e-15);
        CHECK(rel_err(b.k6, k6) < 1e-15);
        CHECK(rel_err(b.k7, k7) < 1e-15);
        CHECK(rel_err(b.k8, k8) < 1e-15);
        CHECK(rel_err(b.k9, k9) < 1e-15);
        CHECK(rel_err(b.k10, k10) < 1e-15);
        CHECK(rel_err(b.k11, k11) < 1e-15);
        CHECK(rel_err(b.k12, k12) < 1e-15);
        CHECK(rel_err(b.k13, k13) < 1e-15);
        CHECK(rel_err(b.n_s, n_s) < 1e-14);
        CHECK(rel_err(b.n_r, n_r) < 1e-14);
    }
    SUBCASE("invariant bounds grow with the weight variation") {
        double prev_s = -1.0;
        for (double V : {0.0, 0.25, 0.5, 1.0}) {
            const auto b = bound_constants(4.0, 0.5, 0.5, 0.8, 1.25, 2.0, 2.0, V);
            CHECK(b.n_s > prev_s);
            CHECK(b.n_s_robust >= b.n_s * (1.0 - 1e-15));
            CHECK(b.n_r_robust >= b.n_r * (1.0 - 1e-15));
            prev_s = b.n_s;
        }
    }
    SUBCASE("preconditions") {
        CHECK_THROWS_AS(bound_constants(1.0, 0.5, 0.5, 1, 1, 1, 1, 0), ConfigError);
        CHECK_THROWS_AS(bound_constants(4.0, 0.0, 0.5, 1, 1, 1, 1, 0), ConfigError);
        CHECK_THROWS_AS(bound_constants(4.0, 0.5, 0.5, 2, 1, 1, 1, 0), ConfigError);
        CHECK_THROWS_AS(bound_constants(4.0, 0.5, 0.5, 1, 1, 1, 1, -1), ConfigError);
    }
}

TEST_CASE("specific-volume floor from the wavespeed integral") {
    auto law = gamma_law(2.0);
    SUBCASE("closed-form reference: h_max = 2 sqrt(2) gives tau_min = 1/4") {
        const auto res = tau_min_bound(*law, 2.0 * std::sqrt(2.0));
        CHECK(res.reached);
        CHECK(rel_err(res.tau_min, 0.25) < 1e-8);
        CHECK(res.residual < 1e-6 * res.h_max);
        CHECK(rel_err(res.c_max, 8.0 * std::sqrt(2.0)) < 1e-7);
        CHECK(rel_err(res.p_max, 32.0) < 1e-7);
    }
    SUBCASE("vanishing target leaves the reference volume") {
        const auto res = tau_min_bound(*law, 1e-8);
        CHECK(res.reached);
        CHECK(std::abs(res.tau_min - 1.0) < 1e-6);
    }
    SUBCASE("monotone decreasing in the target") {
        const double t1 = tau_min_bound(*law, 1.0).tau_min;
        const double t2 = tau_min_bound(*law, 2.0).tau_min;
        const double t4 = tau_min_bound(*law, 4.0).tau_min;
        CHECK(t1 > t2);
        CHECK(t2 > t4);
        CHECK(t4 > 0.0);
    }
    SUBCASE("entropy shifts the floor consistently") {
        // c scales by e^{S/(2 c_v)}: a higher-entropy column reaches the same
        // h_max at smaller depth, so tau_min grows with S
        const double lo = tau_min_bound(*law, 2.0, 0.0).tau_min;
        const double hi = tau_min_bound(*law, 2.0, 0.5).tau_min;
        CHECK(hi > lo);
    }
    SUBCASE("invalid targets throw") {
        CHECK_THROWS_AS(tau_min_bound(*law, 0.0), ConfigError);
        CHECK_THROWS_AS(tau_min_bound(*law, 1.0, 0.0, -1.0), ConfigError);
    }
}

TEST_CASE("monitor manifest matches the installed data file") {
    const auto manifest = monitor_manifest();
    CHECK(manifest.size() == 18);

    std::ifstream in(PSYS_MANIFEST_PATH);
    REQUIRE_MESSAGE(in.good(), "manifest data file missing: " PSYS_MANIFEST_PATH);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        lines.push_back(line);
    }
    REQUIRE(lines.size() == manifest.size());
    for (std::size_t i = 0; i < manifest.size(); ++i) {
        CAPTURE(i);
        CHECK(lines[i] == manifest[i]);
    }
}

namespace {

struct MonitorFixture {
    std::unique_ptr<PressureLaw> law = gamma_law(2.0);
    ConstantEntropy flat{0.0, 1.0};
    Grid grid;
    std::unique_ptr<PSystem> system;
    RunResult result;
    MonitorInputs inputs;

    explicit MonitorFixture(double amplitude, double horizon) {
        grid.x_left = -10.0;
        grid.x_right = 10.0;
        grid.n_cells = 256;
        grid.boundary = Boundary::periodic;
        system = std::make_unique<PSystem>(*law, flat, grid);

        const auto init = make_initial_data(
            grid, "sech2-pulse", {{"amplitude", amplitude}, {"width", 2.0}});
        const auto state = system->make_state(init.tau, init.u);

        RunOptions opt;
        opt.horizon = horizon;
        result = run(*system, state, opt);

        // assemble the monitor inputs the way the pipeline does
        double k_s = 0.0, k_r = 0.0;
        for (int i = 0; i < grid.n_cells; ++i) {
            k_s = std::max(k_s, std::abs(state.s[i]));
            k_r = std::max(k_r, std::abs(state.r[i]));
        }
        const auto wr = flat.weight_range(grid.x_left, grid.x_right);
        const double V = flat.total_variation(grid.x_left, grid.x_right);
        inputs.bounds =
            bound_constants(law->constants().k, law->constants().k1,
                            law->constants().k2, wr.first, wr.second, k_s, k_r, V);
        const double h_max = 0.5 * (inputs.bounds.n_s + inputs.bounds.n_r);
        const auto tm = tau_min_bound(*law, h_max);
        inputs.tau_min = tm.tau_min;
        inputs.c_max = tm.c_max;
        inputs.p_max = tm.p_max;
        const StateBox box{tm.tau_min, 4.0, grid.x_left, grid.x_right};
        const auto est = estimate_N(*law, flat, box, 16);
        const auto env = envelopes(est.N, state.y, state.q);
        inputs.Y = env.Y;
        inputs.Q = env.Q;
        inputs.growth = a2_growth_constants(*law, flat, grid.centers(),
                                            state.tau, tm.tau_min, env.Y, env.Q);
    }
};

} // namespace

TEST_CASE("monitors: constant-entropy pulse satisfies every tracked bound") {
    MonitorFixture fx(0.4, 0.5);
    REQUIRE(fx.result.record.status == RunStatus::ran_to_horizon);

    const auto log = monitor_run(*fx.system, fx.result.trajectory, fx.inputs);
    CHECK(log.all_passed);
    CHECK(log.total_violations == 0);
    CHECK(log.levels_monitored == log.levels_total);
    CHECK(log.levels_total == fx.result.trajectory.levels());

    // emission order matches the manifest
    const auto manifest = monitor_manifest();
    REQUIRE(log.checks.size() == manifest.size());
    for (std::size_t i = 0; i < manifest.size(); ++i)
        CHECK(log.checks[i].name == manifest[i]);

    // the directional-derivative sandwich has no qualifying sample here
    const auto* dsl = log.find("ds_dt_sandwich_lower");
    REQUIRE(dsl != nullptr);
    CHECK_FALSE(dsl->evaluated);
    CHECK_FALSE(dsl->note.empty());

    // initial-data checks apply only at t = 0 and hold with zero margin
    const auto* is = log.find("initial_s_bound");
    REQUIRE(is != nullptr);
    CHECK(is->evaluated);
    CHECK(is->worst_margin >= -1e-12);
    CHECK(is->worst_time == 0.0);

    // per-level margins are recorded for every stored level
    const auto* sl = log.find("s_linf_bound");
    REQUIRE(sl != nullptr);
    CHECK(sl->step_margins.size() == log.levels_total);
    CHECK(sl->worst_margin >= -fx.inputs.slack);
}

TEST_CASE("monitors: a mis-set invariant bound is flagged at t = 0") {
    MonitorFixture fx(0.4, 0.1);
    fx.inputs.bounds.n_s = 0.0; // contradicts |s| ~ 2 sqrt(2)
    const auto log = monitor_run(*fx.system, fx.result.trajectory, fx.inputs);
    CHECK_FALSE(log.all_passed);
    CHECK(log.total_violations > 0);
    const auto* sl = log.find("s_linf_bound");
    REQUIRE(sl != nullptr);
    CHECK(sl->violated);
    CHECK(sl->first_violation_time == 0.0);
    CHECK(sl->worst_margin < -fx.inputs.slack);
}

TEST_CASE("monitors: the gradient sentinel stops the monitored window") {
    MonitorFixture fx(0.4, 0.1);
    fx.inputs.sentinel = 1e-9; // below the initial gradient scale
    const auto log = monitor_run(*fx.system, fx.result.trajectory, fx.inputs);
    CHECK(log.levels_monitored == 0);
    CHECK(log.levels_total == fx.result.trajectory.levels());
    const auto* tlb = log.find("tau_lower_bound");
    REQUIRE(tlb != nullptr);
    CHECK_FALSE(tlb->evaluated);
}

TEST_CASE("monitors: entropy-coupled run evaluates the derivative sandwich") {
    auto law = gamma_law(2.0);
    TanhEntropy profile(0.05, 0.0, 1.0, 1.0);
    Grid grid;
    grid.x_left = -10.0;
    grid.x_right = 10.0;
    grid.n_cells = 256;
    grid.boundary = Boundary::periodic;
    PSystem system(*law, profile, grid);

    const auto init = make_initial_data(
        grid, "sech2-pulse", {{"amplitude", 0.3}, {"width", 2.0}});
    const auto state = system.make_state(init.tau, init.u);
    RunOptions opt;
    opt.horizon = 0.3;
    const auto result = run(system, state, opt);
    REQUIRE(result.record.status == RunStatus::ran_to_horizon);

    MonitorInputs inputs;
    double k_s = 0.0, k_r = 0.0;
    for (int i = 0; i < grid.n_cells; ++i) {
        k_s = std::max(k_s, std::abs(state.s[i]));
        k_r = std::max(k_r, std::abs(state.r[i]));
    }
    const auto wr = profile.weight_range(grid.x_left, grid.x_right);
    const double V = profile.total_variation(grid.x_left, grid.x_right);
    inputs.bounds = bound_constants(law->constants().k, law->constants().k1,
                                    law->constants().k2, wr.first, wr.second,
                                    k_s, k_r, V);
    const double h_max = 0.5 * (inputs.bounds.n_s + inputs.bounds.n_r);
    const auto tm = tau_min_bound(*law, h_max, profile.S(0.0));
    inputs.tau_min = tm.tau_min;
    inputs.c_max = tm.c_max;
    inputs.p_max = tm.p_max;
    const StateBox box{tm.tau_min, 4.0, grid.x_left, grid.x_right};
    const auto est = estimate_N(*law, profile, box, 16);
    const auto env = envelopes(est.N, state.y, state.q);
    inputs.Y = env.Y;
    inputs.Q = env.Q;
    inputs.growth = a2_growth_constants(*law, profile, grid.centers(), state.tau,
                                        tm.tau_min, env.Y, env.Q);

    const auto log = monitor_run(system, result.trajectory, inputs);
    const auto* dsl = log.find("ds_dt_sandwich_lower");
    const auto* dsu = log.find("ds_dt_sandwich_upper");
    REQUIRE(dsl != nullptr);
    REQUIRE(dsu != nullptr);
    CHECK(dsl->evaluated);
    CHECK(dsu->evaluated);
    // declared k1 = k2 make the sandwich an exact pointwise identity
    CHECK(dsl->worst_margin >= -1e-12);
    CHECK(dsu->worst_margin >= -1e-12);
    CHECK(dsl->violations == 0);
    CHECK(dsu->violations == 0);
    CHECK(log.all_passed);
}
