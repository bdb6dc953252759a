#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "psys/entropy_profile.hpp"
#include "psys/pressure_law.hpp"
#include "psys/thermo.hpp"
#include "support.hpp"

using namespace psys;
using testsupport::rel_err;

namespace {

std::unique_ptr<PressureLaw> gamma_law(double gamma, double K = 1.0,
                                       double c_v = 1.0) {
    return make_pressure_law("gamma-law",
                             {{"K", K}, {"gamma", gamma}, {"c_v", c_v}});
}

std::vector<double> geometric(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i)
        v[i] = lo * std::pow(hi / lo, i / (n - 1.0));
    return v;
}

} // namespace

TEST_CASE("sound speed matches the gamma-law closed form") {
    auto law2 = gamma_law(2.0);
    CHECK(rel_err(sound_speed(*law2, 1.0, 0.0), std::sqrt(2.0)) < 1e-14);
    auto law3 = gamma_law(3.0);
    CHECK(rel_err(sound_speed(*law3, 1.0, 0.0), std::sqrt(3.0)) < 1e-14);
    // entropy scaling: c = sqrt(gamma K) e^{S/(2 c_v)} tau^{-(gamma+1)/2}
    CHECK(rel_err(sound_speed(*law2, 0.5, 0.4),
                  std::sqrt(2.0) * std::exp(0.2) * std::pow(0.5, -1.5)) < 1e-14);
    CHECK_THROWS_AS(sound_speed(testsupport::IncreasingLaw{}, 1.0, 0.0),
                    DomainError);
}

TEST_CASE("h integral: closed form vs quadrature across the reference range") {
    for (double gamma : {1.4, 2.0, 3.0}) {
        auto law = gamma_law(gamma);
        for (double tau : geometric(0.1, 10.0, 41)) {
            const double closed =
                2.0 * std::sqrt(gamma) / (gamma - 1.0) *
                std::pow(tau, -0.5 * (gamma - 1.0));
            CAPTURE(gamma);
            CAPTURE(tau);
            CHECK(rel_err(compute_h(*law, tau, 0.0), closed) < 1e-12);
            CHECK(rel_err(compute_h_quadrature(*law, tau, 0.0), closed) < 1e-8);
        }
    }
    SUBCASE("reference values") {
        auto law = gamma_law(2.0);
        CHECK(rel_err(compute_h(*law, 1.0, 0.0), 2.0 * std::sqrt(2.0)) < 1e-14);
        CHECK(rel_err(compute_h(*law, 4.0, 0.0), std::sqrt(2.0)) < 1e-14);
    }
    SUBCASE("h vanishes toward infinite specific volume") {
        auto law = gamma_law(2.0);
        CHECK(compute_h(*law, 1e12, 0.0) < 1e-5);
        CHECK(compute_h_quadrature(*law, 1e10, 0.0) <
              compute_h_quadrature(*law, 1e8, 0.0));
    }
    SUBCASE("h is strictly decreasing in tau") {
        auto law = gamma_law(1.4);
        double prev = compute_h(*law, 0.1, 0.1);
        for (double tau : geometric(0.12, 10.0, 20)) {
            const double cur = compute_h(*law, tau, 0.1);
            CHECK(cur < prev);
            prev = cur;
        }
    }
}

TEST_CASE("riemann invariants round-trip") {
    const auto [s, r] = riemann_invariants(0.0, 2.0 * std::sqrt(2.0));
    CHECK(s == doctest::Approx(2.0 * std::sqrt(2.0)));
    CHECK(r == doctest::Approx(-2.0 * std::sqrt(2.0)));
    const auto [s2, r2] = riemann_invariants(1.0, 1.0);
    CHECK(s2 == 2.0);
    CHECK(r2 == 0.0);
    CHECK(0.5 * (s2 + r2) == 1.0);
    CHECK(0.5 * (s2 - r2) == 1.0);
}

TEST_CASE("entropy-coupling integral I") {
    SUBCASE("vanishes identically without an entropy gradient") {
        auto law = gamma_law(2.0);
        for (double tau : {0.2, 1.0, 5.0})
            CHECK(std::abs(compute_I(*law, tau, 0.3, 0.0)) < 1e-14);
    }
    SUBCASE("closed form at the gamma=2 reference point") {
        // I(tau=1, S=0, sigma=1) = -2^{-1/4}/5: the integrand collapses to
        // -(1/4) 2^{-1/4} xi^{-9/4}
        auto law = gamma_law(2.0);
        const double expected = -std::pow(2.0, -0.25) / 5.0;
        CHECK(rel_err(compute_I(*law, 1.0, 0.0, 1.0), expected) < 1e-10);
    }
    SUBCASE("matches an independent trapezoid-refinement oracle") {
        for (double gamma : {1.4, 2.0}) {
            auto law = gamma_law(gamma);
            for (double tau : {0.5, 1.0, 2.0}) {
                const double S = 0.1, sigma = 0.7;
                auto integrand = [&](double xi) {
                    const double mp = -law->p_tau(xi, S);
                    return std::pow(mp, -0.25) * law->p_tauS(xi, S) * sigma +
                           std::pow(mp, -1.25) * law->p_tautau(xi, S) *
                               law->p_S(xi, S) * sigma;
                };
                const double oracle =
                    -0.25 * testsupport::trapezoid_tail(integrand, tau, 1e-9);
                CAPTURE(gamma);
                CAPTURE(tau);
                CHECK(rel_err(compute_I(*law, tau, S, sigma), oracle) < 1e-6);
            }
        }
    }
    SUBCASE("linear in the entropy slope") {
        auto law = gamma_law(1.4);
        const double eps = 1e-3;
        const double full = compute_I(*law, 0.8, 0.0, eps);
        const double half = compute_I(*law, 0.8, 0.0, 0.5 * eps);
        CHECK(rel_err(full, 2.0 * half) < 1e-4);
    }
}

TEST_CASE("mu-derivative of I") {
    auto law = gamma_law(2.0);
    SUBCASE("vanishes identically without an entropy gradient") {
        for (double tau : {0.2, 1.0, 5.0})
            CHECK(std::abs(compute_I_mu(*law, tau, -0.2, 0.0)) < 1e-14);
    }
    SUBCASE("gamma-law closed form: I_mu = 3 sigma I / (4 c_v)") {
        // every integrand factor scales like e^{3S/(4 c_v)}, so the
        // S-derivative of I is (3/(4 c_v)) I and I_mu = sigma times that
        for (double tau : {0.5, 1.0, 2.0}) {
            for (double sigma : {0.3, 1.0}) {
                const double I = compute_I(*law, tau, 0.1, sigma);
                const double I_mu = compute_I_mu(*law, tau, 0.1, sigma);
                CAPTURE(tau);
                CAPTURE(sigma);
                CHECK(rel_err(I_mu, 0.75 * sigma * I) < 1e-6);
            }
        }
    }
    SUBCASE("matches the finite difference of I in the entropy direction") {
        auto law14 = gamma_law(1.4);
        for (double tau : {0.6, 1.3}) {
            const double S = 0.05, sigma = 0.8;
            const double fd = sigma * testsupport::fd_derivative(
                                          [&](double s) {
                                              return compute_I(*law14, tau, s, sigma);
                                          },
                                          S, 1e-3);
            CHECK(rel_err(compute_I_mu(*law14, tau, S, sigma), fd) < 1e-5);
        }
    }
}

TEST_CASE("gradient pair assembly") {
    auto law = gamma_law(2.0);
    ConstantEntropy flat(0.0, 1.0);
    SUBCASE("isentropic with zero derivatives") {
        const auto pt = make_thermo_point(*law, flat, 1.0, 0.0);
        const auto g = gradient_pair(pt, 0.0, 0.0);
        CHECK(g.y == 0.0);
        CHECK(g.q == 0.0);
    }
    SUBCASE("isentropic with unit compression slope") {
        const auto pt = make_thermo_point(*law, flat, 1.0, 0.0);
        const auto g = gradient_pair(pt, -1.0, -1.0); // s_x = r_x = u_x = -1
        const double expected = -std::pow(2.0, 0.25);
        CHECK(rel_err(g.y, expected) < 1e-14);
        CHECK(rel_err(g.q, expected) < 1e-14);
    }
    SUBCASE("entropy gradient with zero field derivatives") {
        TanhEntropy profile(0.2, 0.0, 1.0, 1.0);
        const auto pt = make_thermo_point(*law, profile, 1.0, 0.3);
        const auto g = gradient_pair(pt, 0.0, 0.0);
        const double expected = pt.p_mu / std::sqrt(pt.c) - pt.I;
        CHECK(rel_err(g.y, expected) < 1e-14);
        CHECK(rel_err(g.q, -expected) < 1e-14);
    }
    SUBCASE("pressure never exceeds c times h at constructed points") {
        TanhEntropy profile(0.2, 0.0, 1.0, 1.0);
        for (double tau : geometric(0.1, 10.0, 17)) {
            const auto pt = make_thermo_point(*law, profile, tau, 0.5);
            CHECK(pt.p <= pt.c * pt.h * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("thermo lattice: interpolation accuracy and clamp accounting") {
    auto law = gamma_law(2.0);
    TanhEntropy profile(0.15, 0.0, 1.0, 1.0);
    std::vector<double> xs;
    for (int j = 0; j <= 16; ++j) xs.push_back(-3.0 + 6.0 * j / 16.0);
    const ThermoLattice lattice(*law, profile, 0.1, 10.0, 257, xs);

    SUBCASE("h and I reproduce direct evaluation between nodes") {
        for (double tau : geometric(0.11, 9.5, 23)) {
            for (double x : {-2.7, -0.9, 0.0, 1.3}) {
                const double S = profile.S(x), sigma = profile.S_prime(x);
                CAPTURE(tau);
                CAPTURE(x);
                CHECK(rel_err(lattice.h_at(tau, x), compute_h(*law, tau, S)) <
                      1e-6);
                const double I_direct = compute_I(*law, tau, S, sigma);
                CHECK(std::abs(lattice.I_at(tau, x) - I_direct) <
                      1e-6 * std::max(1.0, std::abs(I_direct)));
            }
        }
    }
    SUBCASE("out-of-range queries clamp and are counted") {
        const long before = lattice.clamped_evaluations();
        (void)lattice.h_at(0.01, 0.0);
        (void)lattice.h_at(50.0, 0.0);
        CHECK(lattice.clamped_evaluations() == before + 2);
        CHECK(rel_err(lattice.h_at(0.01, 0.0), compute_h(*law, 0.1, 0.0)) < 1e-9);
    }
}

TEST_CASE("cumulative wavespeed-power table matches direct quadrature") {
    auto law = gamma_law(2.0);
    ConstantEntropy flat(0.0, 1.0);
    auto g = [&](double xi, double) {
        return std::pow(-law->p_tau(xi, 0.0), 0.25);
    };
    const CumulativeTauTable table(g, 0.25, 8.0, 400, {0.0});
    for (double tau : {0.3, 1.0, 2.5, 7.0}) {
        const double direct = testsupport::trapezoid_refine(
            [&](double xi) { return g(xi, 0.0); }, 0.25, tau, 1e-11);
        CHECK(rel_err(table.at(tau, 0.0), direct) < 1e-7);
    }
}
