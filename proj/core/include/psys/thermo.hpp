#pragma once

#include <atomic>
#include <functional>
#include <vector>

#include "psys/common.hpp"
#include "psys/entropy_profile.hpp"
#include "psys/interp.hpp"
#include "psys/pressure_law.hpp"

namespace psys {

// -- mu-assembly -------------------------------------------------------------
// One x-derivative enters only through S(x): with sigma = S'(x),
//   p_mu       = p_S      * sigma
//   p_taumu    = p_tauS   * sigma
//   p_tautaumu = p_tautauS* sigma
//   p_mumu     = p_SS     * sigma^2        (no S'' term by construction)

double p_mu(const PressureLaw& law, double tau, double S, double sigma);
double p_taumu(const PressureLaw& law, double tau, double S, double sigma);
double p_tautaumu(const PressureLaw& law, double tau, double S, double sigma);
double p_mumu(const PressureLaw& law, double tau, double S, double sigma);

/// c = sqrt(-p_tau); throws DomainError when p_tau >= 0.
double sound_speed(const PressureLaw& law, double tau, double S);

/// h(tau, S) = integral of sqrt(-p_xi) over [tau, infinity); uses the law's
/// closed form when available, else the doubling tail quadrature. The anchor
/// is h -> 0 as tau -> infinity.
double compute_h(const PressureLaw& law, double tau, double S);

/// Same integral, forced through quadrature (kept callable as a cross-check
/// even when a closed form exists).
double compute_h_quadrature(const PressureLaw& law, double tau, double S);

/// Entropy-coupling integral
///   I(tau) = -1/4 * integral over [tau, inf) of
///            [ (-p_xi)^(-1/4) p_ximu + (-p_xi)^(-5/4) p_xixi p_mu ] dxi,
/// the h-line integral written in tau after dh = -c dtau.
double compute_I(const PressureLaw& law, double tau, double S, double sigma);

/// mu-derivative of the integrated-by-parts form of I: a boundary term at tau
/// plus a three-term tail integral (same tau-substitution as compute_I).
double compute_I_mu(const PressureLaw& law, double tau, double S, double sigma);

// -- point bundle ------------------------------------------------------------

struct ThermoPoint {
    double tau = 0.0, x = 0.0;
    double S = 0.0, sigma = 0.0;
    double c = 0.0, p = 0.0, h = 0.0;
    double I = 0.0, I_mu = 0.0, p_mu = 0.0;
};

struct GradientPair {
    double y = 0.0;
    double q = 0.0;
};

/// s = u + h, r = u - h.
inline std::pair<double, double> riemann_invariants(double u, double h) {
    return {u + h, u - h};
}

/// y = sqrt(c) (u+h)_x + p_mu/sqrt(c) - I,   q = sqrt(c) (u-h)_x - p_mu/sqrt(c) + I.
GradientPair gradient_pair(const ThermoPoint& pt, double ds_dx, double dr_dx);

class ThermoLattice;

/// Bundle every pointwise quantity at (tau, x). Uses the lattice for the
/// integral quantities when one is supplied. Enforces p <= c*h.
ThermoPoint make_thermo_point(const PressureLaw& law, const EntropyProfile& profile,
                              double tau, double x,
                              const ThermoLattice* lattice = nullptr);

// -- lattice -----------------------------------------------------------------

/// Memoizes h, I and I_mu on a geometric tau grid per x column, interpolating
/// shape-preservingly in log tau and linearly between columns. Out-of-range
/// tau queries clamp to the nearest node and are counted.
class ThermoLattice {
public:
    ThermoLattice(const PressureLaw& law, const EntropyProfile& profile,
                  double tau_lo, double tau_hi, int n_tau,
                  std::vector<double> x_points);

    double h_at(double tau, double x) const;
    double I_at(double tau, double x) const;
    double I_mu_at(double tau, double x) const;

    double tau_lo() const { return tau_lo_; }
    double tau_hi() const { return tau_hi_; }
    const std::vector<double>& x_points() const { return x_points_; }
    long clamped_evaluations() const { return clamp_count_.load(); }

    const PressureLaw& law() const { return law_; }
    const EntropyProfile& profile() const { return profile_; }

private:
    struct Column {
        MonotoneCubic h, I, I_mu;
    };
    const PressureLaw& law_;
    const EntropyProfile& profile_;
    double tau_lo_, tau_hi_;
    std::vector<double> x_points_;
    std::vector<Column> columns_;
    bool has_closed_h_ = false;
    mutable std::atomic<long> clamp_count_{0};

    double eval(double tau, double x,
                const std::function<double(const Column&, double)>& pick) const;
};

/// Per-column cumulative integral F(tau, x) = integral of g(xi, x) over
/// [tau_ref, tau], tabulated on a geometric lattice (used by the run monitors
/// for the wavespeed integral).
class CumulativeTauTable {
public:
    CumulativeTauTable(const std::function<double(double, double)>& g,
                       double tau_ref, double tau_hi, int n_tau,
                       std::vector<double> x_points);
    double at(double tau, double x) const;

private:
    double tau_ref_, tau_hi_;
    std::vector<double> x_points_;
    std::vector<MonotoneCubic> columns_;
};

} // namespace psys
