#include "psys/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "psys/quadrature.hpp"
#include "psys/thermo.hpp"

namespace psys {

BoundConstants bound_constants(double k, double k1, double k2, double k_ml,
                               double k_mr, double k_s, double k_r, double V) {
    if (!(k > 1.0)) throw ConfigError("bound_constants: k must exceed 1");
    if (!(k1 > 0.0 && k2 > 0.0))
        throw ConfigError("bound_constants: k1, k2 must be positive");
    if (!(k_ml > 0.0 && k_mr >= k_ml))
        throw ConfigError("bound_constants: need 0 < k_ml <= k_mr");
    if (!(k_s >= 0.0 && k_r >= 0.0 && V >= 0.0))
        throw ConfigError("bound_constants: k_s, k_r, V must be non-negative");

    BoundConstants b;
    b.k = k;
    b.k1 = k1;
    b.k2 = k2;
    b.k_ml = k_ml;
    b.k_mr = k_mr;
    b.k_s = k_s;
    b.k_r = k_r;
    b.V = V;

    const double R = k_mr / k_ml;
    b.k3 = std::max(1.0 / (2.0 * k1), 1.0 / (2.0 * k * k2));
    b.k4 = std::max(std::pow(R, 1.0 / (2.0 * k * k1)), std::pow(R, 1.0 / (2.0 * k2)));
    b.k5 = std::max(std::pow(R, 1.0 / (2.0 * k * k1)) / (2.0 * k * k1),
                    std::pow(R, 1.0 / (2.0 * k2)) / (2.0 * k2));
    b.k6 = std::max(std::pow(R, 1.0 / (2.0 * k1)), std::pow(R, 1.0 / (2.0 * k * k2)));
    b.k7 = std::max(1.0 / (2.0 * k * k1), 1.0 / (2.0 * k2));
    b.k8 = std::max(std::pow(R, 1.0 / (2.0 * k1)) / (2.0 * k1),
                    std::pow(R, 1.0 / (2.0 * k * k2)) / (2.0 * k * k2));
    b.k9 = b.k3 * b.k4 + b.k5;
    b.k10 = std::max(1.0, b.k6);
    b.k11 = std::max(b.k6 * b.k7 + b.k8, b.k7 + b.k8);
    b.k12 = std::max(1.0, b.k4);
    b.k13 = std::max(b.k3 * b.k4 + b.k5, b.k3 + b.k5);

    const double gronwall = std::exp(b.k11 * b.k13 * V * V);
    auto final_bound = [&](double lead, double ks, double kr) {
        return lead * ks + b.k9 * b.k10 * kr * V +
               b.k9 * b.k11 * V * (b.k12 * ks * V + b.k10 * b.k13 * kr * V * V) *
                   gronwall;
    };
    b.n_s = final_bound(b.k6, k_s, k_r);
    b.n_r = final_bound(b.k6, k_r, k_s);
    const double lead_robust = std::max(b.k4, b.k6);
    b.n_s_robust = final_bound(lead_robust, k_s, k_r);
    b.n_r_robust = final_bound(lead_robust, k_r, k_s);
    return b;
}

TauMinResult tau_min_bound(const PressureLaw& law, double h_max, double S,
                           double tau_ref) {
    if (!(h_max > 0.0)) throw ConfigError("tau_min_bound: h_max must be positive");
    if (!(tau_ref > 0.0))
        throw ConfigError("tau_min_bound: tau_ref must be positive");

    auto speed = [&](double tau) { return std::sqrt(-law.p_tau(tau, S)); };
    auto wave_integral = [&](double lo) {
        if (lo >= tau_ref) return 0.0;
        return integrate(speed, lo, tau_ref, 1e-12, 1e-300);
    };

    TauMinResult res;
    res.h_max = h_max;

    // establish a bracket [lo, tau_ref] with integral(lo) >= h_max
    double lo = 0.5 * tau_ref;
    double f_lo = wave_integral(lo);
    int halvings = 0;
    while (f_lo < h_max && halvings < 2000) {
        lo *= 0.5;
        if (lo < 1e-280) break;
        f_lo = wave_integral(lo);
        ++halvings;
    }
    if (f_lo < h_max) {
        res.reached = false;
        res.tau_min = lo;
        res.c_max = speed(lo);
        res.p_max = res.c_max * h_max;
        res.residual = std::abs(f_lo - h_max);
        res.note = "wavespeed integral reached only " + fmt17(f_lo) +
                   " of the target " + fmt17(h_max) +
                   " before the bracket floor; the vacuum-side integral should "
                   "diverge, so this signals quadrature trouble or a law "
                   "violating the near-vacuum hypothesis";
        return res;
    }

    double hi = tau_ref;
    int it = halvings;
    while (hi - lo > 1e-10 * lo) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = wave_integral(mid);
        if (f_mid >= h_max)
            lo = mid;
        else
            hi = mid;
        if (++it > 20000) break;
    }
    res.tau_min = lo;
    res.iterations = it;
    res.residual = std::abs(wave_integral(lo) - h_max);
    res.c_max = speed(lo);
    res.p_max = res.c_max * h_max;
    return res;
}

SandwichReport check_pressure_sandwich(const PressureLaw& law,
                                       const EntropyProfile& profile,
                                       const StateBox& box, int n) {
    if (n < 2) throw ConfigError("check_pressure_sandwich: need n >= 2");
    if (!(box.tau_lo > 0.0 && box.tau_hi > box.tau_lo))
        throw ConfigError("check_pressure_sandwich: bad tau range");
    const double k = law.constants().k;
    if (!(k > 1.0))
        throw ConfigError("check_pressure_sandwich: declared k must exceed 1");

    SandwichReport rep;
    rep.upper_margin = std::numeric_limits<double>::infinity();
    rep.lower_margin = std::numeric_limits<double>::infinity();
    rep.tightest_k = 0.0;
    rep.loosest_k = std::numeric_limits<double>::infinity();

    const double log_lo = std::log(box.tau_lo);
    const double log_hi = std::log(box.tau_hi);
    for (int j = 0; j < n; ++j) {
        const double x =
            n == 1 ? box.x_lo : box.x_lo + (box.x_hi - box.x_lo) * j / (n - 1.0);
        const double S = profile.S(x);
        for (int i = 0; i < n; ++i) {
            const double tau = std::exp(log_lo + (log_hi - log_lo) * i / (n - 1.0));
            const double p = law.p(tau, S);
            const double np = -law.p_tau(tau, S);
            if (!(p > 0.0) || !(np > 0.0))
                throw DomainError("pressure sandwich: law degenerate at tau=" +
                                  fmt17(tau) + ", x=" + fmt17(x));
            const double c = std::sqrt(np);
            const double h = compute_h(law, tau, S);
            const double ch = c * h;
            const double scale = std::max({p, ch, ch / k});
            const double upper = (ch - p) / scale;
            const double lower = (k * p - ch) / scale;
            if (upper < rep.upper_margin) {
                rep.upper_margin = upper;
                rep.witness_tau_upper = tau;
                rep.witness_x_upper = x;
            }
            if (lower < rep.lower_margin) {
                rep.lower_margin = lower;
                rep.witness_tau_lower = tau;
                rep.witness_x_lower = x;
            }
            const double ratio = ch / p;
            rep.tightest_k = std::max(rep.tightest_k, ratio);
            rep.loosest_k = std::min(rep.loosest_k, ratio);
        }
    }
    rep.hard_failure = rep.upper_margin < -1e-9;
    rep.passed = !rep.hard_failure && rep.lower_margin >= -1e-12;
    if (rep.hard_failure)
        rep.note = "pressure exceeds c*h at tau=" + fmt17(rep.witness_tau_upper) +
                   ", x=" + fmt17(rep.witness_x_upper) +
                   "; this contradicts the structural hypotheses and signals a "
                   "law implementation bug";
    else if (!rep.passed)
        rep.note = "declared k is too small for this box; smallest admissible "
                   "k here is " +
                   fmt17(rep.tightest_k);
    return rep;
}

} // namespace psys
