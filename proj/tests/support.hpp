#pragma once

// Shared helpers for the unit-test binaries: independent quadrature and
// finite-difference oracles (deliberately different algorithms from the
// library paths they cross-check) plus small stub pressure laws exercising
// the failure branches of the hypothesis checkers.

#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "psys/pressure_law.hpp"

namespace testsupport {

inline double rel_err(double got, double want) {
    const double scale =
        std::max({std::abs(got), std::abs(want), 1e-300});
    return std::abs(got - want) / scale;
}

/// Composite-trapezoid integral of f over [a, b] with uniform refinement until
/// the value stabilizes. Slow and simple on purpose: it shares nothing with
/// the library's adaptive Gauss-Kronrod path.
inline double trapezoid_refine(const std::function<double(double)>& f, double a,
                               double b, double rel_tol = 1e-10,
                               int max_doublings = 24) {
    long n = 64;
    auto eval = [&](long m) {
        const double dx = (b - a) / m;
        double sum = 0.5 * (f(a) + f(b));
        for (long i = 1; i < m; ++i) sum += f(a + i * dx);
        return sum * dx;
    };
    double prev = eval(n);
    for (int it = 0; it < max_doublings; ++it) {
        n *= 2;
        const double cur = eval(n);
        if (std::abs(cur - prev) <=
            rel_tol * std::max(std::abs(cur), 1e-300))
            return cur;
        prev = cur;
    }
    return prev;
}

/// Tail integral of f over [a, infinity) via the exponential substitution
/// xi = a e^z (so power-law tails become geometric in z), trapezoid-refined.
/// The cutoff z_max grows until the integrand is negligible there.
inline double trapezoid_tail(const std::function<double(double)>& f, double a,
                             double rel_tol = 1e-10) {
    auto g = [&](double z) {
        const double xi = a * std::exp(z);
        return f(xi) * xi; // d xi = xi dz
    };
    double z_max = 8.0;
    const double head = std::abs(g(0.0)) + 1e-300;
    while (std::abs(g(z_max)) > 1e-18 * head && z_max < 700.0) z_max += 8.0;
    return trapezoid_refine(g, 0.0, z_max, rel_tol);
}

/// Fourth-order Richardson-extrapolated central difference of f at x.
inline double fd_derivative(const std::function<double(double)>& f, double x,
                            double h) {
    auto central = [&](double step) {
        return (f(x + step) - f(x - step)) / (2.0 * step);
    };
    return (4.0 * central(0.5 * h) - central(h)) / 3.0;
}

// -- stub laws for checker failure paths -------------------------------------

/// p = tau: violates the pressure-decreasing requirement everywhere.
class IncreasingLaw : public psys::PressureLaw {
public:
    IncreasingLaw() {
        constants_.k = 2.0;
        constants_.A = 1.0;
        constants_.k1 = constants_.k2 = 0.5;
        constants_.l = {1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0};
    }
    double p(double tau, double) const override { return tau; }
    double p_tau(double, double) const override { return 1.0; }
    double p_tautau(double, double) const override { return 0.0; }
    double p_tautautau(double, double) const override { return 0.0; }
    double p_S(double, double) const override { return 0.0; }
    double p_tauS(double, double) const override { return 0.0; }
    double p_SS(double, double) const override { return 0.0; }
    double p_tautauS(double, double) const override { return 0.0; }
    std::string name() const override { return "increasing-stub"; }
    double c_v() const override { return 1.0; }
};

/// p = 1 - ln(tau): p_tau = -1/tau, so sqrt(-p_tau) = tau^{-1/2} and the
/// vacuum-side wavespeed integral converges (and the far-side one diverges) —
/// the opposite of what the structural hypotheses demand.
class LogLaw : public psys::PressureLaw {
public:
    LogLaw() {
        constants_.k = 2.0;
        constants_.A = 1.0;
        constants_.k1 = constants_.k2 = 0.5;
        constants_.l = {1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0};
    }
    double p(double tau, double) const override { return 1.0 - std::log(tau); }
    double p_tau(double tau, double) const override { return -1.0 / tau; }
    double p_tautau(double tau, double) const override { return 1.0 / (tau * tau); }
    double p_tautautau(double tau, double) const override {
        return -2.0 / (tau * tau * tau);
    }
    double p_S(double, double) const override { return 0.0; }
    double p_tauS(double, double) const override { return 0.0; }
    double p_SS(double, double) const override { return 0.0; }
    double p_tautauS(double, double) const override { return 0.0; }
    std::string name() const override { return "log-stub"; }
    double c_v() const override { return 1.0; }
};

/// p identically 1: every partial vanishes, so finite differences of the
/// declared partial set are exactly consistent.
class ConstantLaw : public psys::PressureLaw {
public:
    double p(double, double) const override { return 1.0; }
    double p_tau(double, double) const override { return 0.0; }
    double p_tautau(double, double) const override { return 0.0; }
    double p_tautautau(double, double) const override { return 0.0; }
    double p_S(double, double) const override { return 0.0; }
    double p_tauS(double, double) const override { return 0.0; }
    double p_SS(double, double) const override { return 0.0; }
    double p_tautauS(double, double) const override { return 0.0; }
    std::string name() const override { return "constant-stub"; }
    double c_v() const override { return 1.0; }
};

} // namespace testsupport
