// Microbenchmarks for the pointwise thermodynamic kernels: closed-form vs
// quadrature wave-speed integrals, the entropy-coupling integral, and the
// memoizing lattice lookup they feed.

#include <benchmark/benchmark.h>

#include <memory>

#include "psys/entropy_profile.hpp"
#include "psys/pressure_law.hpp"
#include "psys/thermo.hpp"

namespace {

std::unique_ptr<psys::PressureLaw> gamma_law() {
    return psys::make_pressure_law("gamma-law",
                                   {{"gamma", 2.0}, {"K", 1.0}, {"c_v", 1.0}});
}

std::unique_ptr<psys::EntropyProfile> tanh_profile(const psys::PressureLaw& law) {
    return psys::make_entropy_profile(
        "tanh", {{"amplitude", 0.1}, {"width", 1.0}, {"center", 0.0}}, "",
        law.c_v());
}

void bm_h_closed_form(benchmark::State& state) {
    auto law = gamma_law();
    double tau = 0.3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(psys::compute_h(*law, tau, 0.05));
        tau = tau < 3.0 ? tau + 1e-3 : 0.3;
    }
}
BENCHMARK(bm_h_closed_form);

void bm_h_quadrature(benchmark::State& state) {
    auto law = gamma_law();
    double tau = 0.3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(psys::compute_h_quadrature(*law, tau, 0.05));
        tau = tau < 3.0 ? tau + 1e-3 : 0.3;
    }
}
BENCHMARK(bm_h_quadrature);

void bm_entropy_coupling_integral(benchmark::State& state) {
    auto law = gamma_law();
    double tau = 0.3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(psys::compute_I(*law, tau, 0.05, 0.1));
        tau = tau < 3.0 ? tau + 1e-3 : 0.3;
    }
}
BENCHMARK(bm_entropy_coupling_integral);

void bm_lattice_lookup(benchmark::State& state) {
    auto law = gamma_law();
    auto profile = tanh_profile(*law);
    std::vector<double> xs;
    for (int i = 0; i < 65; ++i) xs.push_back(-10.0 + 20.0 * i / 64.0);
    psys::ThermoLattice lattice(*law, *profile, 0.05, 8.0, 257, xs);
    double tau = 0.3, x = -9.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(lattice.I_at(tau, x));
        tau = tau < 3.0 ? tau + 1e-3 : 0.3;
        x = x < 9.0 ? x + 1e-2 : -9.0;
    }
}
BENCHMARK(bm_lattice_lookup);

} // namespace

BENCHMARK_MAIN();
