#pragma once

#include <string>

#include "psys/common.hpp"
#include "psys/entropy_profile.hpp"
#include "psys/pressure_law.hpp"

namespace psys {

/// Constant cascade bounding the weighted Riemann invariants in L-infinity:
/// from the sandwich constants (k, k1, k2), the entropy-weight range
/// [k_ml, k_mr], the initial bounds k_s, k_r and the total variation V of the
/// weight's logarithm, a Gronwall argument yields |s| <= n_s and |r| <= n_r
/// for all time. Every k_i below is the literal max-expression of that
/// argument; n_s_robust / n_r_robust replace the leading k6 with max(k4, k6)
/// to cover both coefficient readings of the final bound.
struct BoundConstants {
    // inputs, recorded for the report
    double k = 0.0, k1 = 0.0, k2 = 0.0;
    double k_ml = 0.0, k_mr = 0.0;
    double k_s = 0.0, k_r = 0.0;
    double V = 0.0;
    // cascade
    double k3 = 0.0, k4 = 0.0, k5 = 0.0, k6 = 0.0, k7 = 0.0, k8 = 0.0;
    double k9 = 0.0, k10 = 0.0, k11 = 0.0, k12 = 0.0, k13 = 0.0;
    // final invariant bounds
    double n_s = 0.0, n_r = 0.0;
    double n_s_robust = 0.0, n_r_robust = 0.0;
};

/// Preconditions: k > 1; k1, k2 > 0; 0 < k_ml <= k_mr; k_s, k_r, V >= 0.
/// V = 0 with k_ml = k_mr gives n_s = k_s and n_r = k_r exactly.
BoundConstants bound_constants(double k, double k1, double k2, double k_ml,
                               double k_mr, double k_s, double k_r, double V);

/// Lower bound on the specific volume reachable under |h| <= h_max, via the
/// wavespeed-integral equation  integral_{tau_min}^{tau_ref} c(xi) dxi = h_max
/// solved by bisection (bracket narrowed below 1e-10 * tau_min). Also returns
/// the implied maxima c_max = c(tau_min) and p_max = c_max * h_max.
struct TauMinResult {
    double tau_min = 0.0;
    double c_max = 0.0;
    double p_max = 0.0;
    double h_max = 0.0;    // the input target
    double residual = 0.0; // |integral - h_max| at the returned tau_min
    int iterations = 0;
    bool reached = true; // false: integral never attained h_max (quadrature
                         // trouble; the vacuum-side integral must diverge)
    std::string note;
};

TauMinResult tau_min_bound(const PressureLaw& law, double h_max, double S = 0.0,
                           double tau_ref = 1.0);

/// Pointwise pressure sandwich  c h / k <= p <= c h  over a (tau, x)-box
/// (equivalently (1/2k) c (s - r) <= p <= (1/2) c (s - r) with s - r = 2h).
/// Margins are relative to max(|p|, |ch|, |ch/k|); an upper-side violation is
/// a hard failure (it contradicts the structural hypotheses on the law).
struct SandwichReport {
    bool passed = false;
    bool hard_failure = false; // p > ch somewhere
    double upper_margin = 0.0; // min (ch - p)/scale
    double lower_margin = 0.0; // min (kp - ch)/scale with the declared k
    double tightest_k = 0.0;   // sup ch/p over the box (smallest admissible k)
    double loosest_k = 0.0;    // inf ch/p over the box
    double witness_tau_upper = 0.0, witness_x_upper = 0.0;
    double witness_tau_lower = 0.0, witness_x_lower = 0.0;
    std::string note;
};

SandwichReport check_pressure_sandwich(const PressureLaw& law,
                                       const EntropyProfile& profile,
                                       const StateBox& box, int n);

} // namespace psys
