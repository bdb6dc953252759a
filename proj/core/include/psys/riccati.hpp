#pragma once

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "psys/common.hpp"
#include "psys/entropy_profile.hpp"
#include "psys/pressure_law.hpp"
#include "psys/thermo.hpp"

namespace psys {

/// Coefficients of the along-characteristic gradient equations
///   forward:  y' = a0 + a1 y - a2 y^2,   backward:  q' = a0 - a1 q - a2 q^2.
struct RiccatiCoefficients {
    double a0 = 0.0, a1 = 0.0, a2 = 0.0;
    double ratio_a1 = 0.0; // a1 / a2
    double ratio_a0 = 0.0; // a0 / a2
    double raw_discriminant = 0.0; // ratio_a1^2 + 4 ratio_a0 before clamping
    double discriminant = 0.0;     // clamped to >= 0
    bool clamped = false;          // raw in [-1e-10, 0): round-off clamp
    bool violation = false;        // raw < -1e-10: reported, not asserted away
};

/// Closed-form a2 = 1/4 (-p_tau)^(-5/4) p_tautau plus the coefficient ratios
/// assembled from (I, I_mu, p_mu, p_taumu); a0, a1 by multiplication.
RiccatiCoefficients coefficients(const PressureLaw& law, const EntropyProfile& profile,
                                 double tau, double x,
                                 const ThermoLattice* lattice = nullptr);

/// Real roots (y_minus <= y_plus) of a0 + a1 y - a2 y^2 = 0, computed in the
/// cancellation-free form. Requires a2 > 0 and discriminant >= 0.
std::pair<double, double> roots(const RiccatiCoefficients& coeffs);

struct ThresholdEstimate {
    double N = 0.0;     // safety_factor * N_raw
    double N_raw = 0.0; // sup over samples of the larger root magnitude
    double sup_abs_lower_root = 0.0;
    double sup_abs_upper_root = 0.0;
    double safety_factor = 1.05;
    StateBox box{};
    int samples_per_axis = 0;
    long clamped_count = 0;   // discriminants clamped by round-off
    long violation_count = 0; // discriminants below the clamp window
    double worst_raw_discriminant = 0.0;
};

/// N = 1.05 * sup over the sampled box of max(|y_minus|, |y_plus|). The box
/// must cover the initial data's tau-range when one is supplied.
ThresholdEstimate estimate_N(
    const PressureLaw& law, const EntropyProfile& profile, const StateBox& box, int n,
    const ThermoLattice* lattice = nullptr,
    std::optional<std::pair<double, double>> data_tau_range = std::nullopt);

struct Envelopes {
    double Y = 0.0; // max{N, sup_x y(x,0)}
    double Q = 0.0; // max{N, sup_x q(x,0)}
};

Envelopes envelopes(double N, const std::vector<double>& y0,
                    const std::vector<double>& q0);

struct A2GrowthConstants {
    double k14 = 0.0; // A * k16
    double k15 = 0.0; // A * k17 + sup_x 1/a2(tau_min, x)
    double k16 = 0.0; // (Y + Q) / 2
    double k17 = 0.0; // sup_x integral of (-p_xi)^(1/4) over [tau_min, tau0(x)]
    double sup_inv_a2_at_tau_min = 0.0;
};

/// Constants of the reciprocal growth bound 1/a2 <= k14 t + k15, derived from
/// the declared third-derivative constant A, the envelopes and the initial
/// data. tau0[i] is the initial specific volume at x_points[i].
A2GrowthConstants a2_growth_constants(const PressureLaw& law,
                                      const EntropyProfile& profile,
                                      const std::vector<double>& x_points,
                                      const std::vector<double>& tau0, double tau_min,
                                      double Y, double Q);

/// Analytic blow-up-time bound for y' <= -eps a2 y^2 with 1/a2 <= k14 t + k15:
///   T = k15 expm1(k14 / (eps |y0|)) / k14,   limit k15/(eps |y0|) as k14 -> 0.
/// Requires y0 < 0, eps > 0, k14 >= 0, k15 > 0.
double blowup_time_bound(double y0, double eps, double k14, double k15);

/// One-step hybrid integrator for the scalar quadratic ODE
///   v' = alpha(t) + beta(t) v + delta(t) v^2.
/// While |v| stays below the switch magnitude it advances v directly; past it,
/// it advances the reciprocal w = 1/v (whose ODE is w' = -alpha w^2 - beta w
/// - delta), which is regular through the pole. A sign change of w marks the
/// pole passage; the crossing time is linearly interpolated and latched.
class QuadraticPathTracker {
public:
    struct Coeffs {
        double alpha = 0.0, beta = 0.0, delta = 0.0;
    };

    /// switch_magnitude <= 0 selects 8*max(1, |v0|).
    explicit QuadraticPathTracker(double v0, double switch_magnitude = 0.0);

    /// Classical 4-stage step from t to t + dt. The four coefficient sets are
    /// evaluated at the four stage points of the underlying path: when the
    /// coefficients vary along a curve x(t) integrated alongside v, stages 2
    /// and 3 sit at different positions even though both are at t + dt/2, so
    /// they carry distinct sets.
    void step(double t, double dt, const Coeffs& s1, const Coeffs& s2,
              const Coeffs& s3, const Coeffs& s4);

    bool blown_up() const { return blown_; }
    double blowup_time() const { return blowup_t_; }

    bool reciprocal_mode() const { return reciprocal_; }
    /// Current v; after the pole this is the branch re-entering from the
    /// opposite sign. Capped at +-1e300 when w is (near) zero.
    double value() const;
    double magnitude() const { return std::abs(value()); }

private:
    double v_;         // v or w depending on mode
    bool reciprocal_ = false;
    double switch_mag_;
    bool blown_ = false;
    double blowup_t_ = 0.0;

    void normalize(); // pick the representation for the next step
};

} // namespace psys
