// Microbenchmarks for the field update: one conservative step at several grid
// sizes, and the derived-field refresh that dominates monitor cost.

#include <benchmark/benchmark.h>

#include <cmath>
#include <memory>

#include "psys/entropy_profile.hpp"
#include "psys/pressure_law.hpp"
#include "psys/solver.hpp"

namespace {

struct Setup {
    std::unique_ptr<psys::PressureLaw> law;
    std::unique_ptr<psys::EntropyProfile> profile;
    std::unique_ptr<psys::PSystem> system;
    psys::FieldState state;
    double dt = 0.0;

    explicit Setup(int cells) {
        law = psys::make_pressure_law(
            "gamma-law", {{"gamma", 2.0}, {"K", 1.0}, {"c_v", 1.0}});
        profile = psys::make_entropy_profile("constant", {{"value", 0.0}}, "",
                                             law->c_v());
        psys::Grid grid;
        grid.x_left = -10.0;
        grid.x_right = 10.0;
        grid.n_cells = cells;
        grid.boundary = psys::Boundary::periodic;
        system = std::make_unique<psys::PSystem>(*law, *profile, grid);
        auto initial = psys::make_initial_data(
            grid, "sech2-pulse",
            {{"amplitude", 0.5}, {"width", 1.0}, {"center", 0.0}});
        state = system->make_state(initial.tau, initial.u, 0.0);
        dt = 0.4 * grid.dx() / system->max_wavespeed(state);
    }
};

void bm_step_field(benchmark::State& bench) {
    Setup setup(static_cast<int>(bench.range(0)));
    for (auto _ : bench) {
        psys::FieldState next = setup.system->step_field(setup.state, setup.dt);
        benchmark::DoNotOptimize(next.tau.data());
    }
    bench.SetItemsProcessed(bench.iterations() * bench.range(0));
}
BENCHMARK(bm_step_field)->Arg(256)->Arg(1024)->Arg(4096);

void bm_refresh_derived(benchmark::State& bench) {
    Setup setup(static_cast<int>(bench.range(0)));
    for (auto _ : bench) {
        setup.system->refresh_derived(setup.state);
        benchmark::DoNotOptimize(setup.state.y.data());
    }
    bench.SetItemsProcessed(bench.iterations() * bench.range(0));
}
BENCHMARK(bm_refresh_derived)->Arg(256)->Arg(1024)->Arg(4096);

} // namespace

BENCHMARK_MAIN();
