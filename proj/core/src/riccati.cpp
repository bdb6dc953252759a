#include "psys/riccati.hpp"

#include <algorithm>
#include <cmath>

#include "psys/quadrature.hpp"

namespace psys {

RiccatiCoefficients coefficients(const PressureLaw& law, const EntropyProfile& profile,
                                 double tau, double x, const ThermoLattice* lattice) {
    const double S = profile.S(x);
    const double sigma = profile.S_prime(x);
    const double np = -law.p_tau(tau, S);
    if (!(np > 0.0))
        throw DomainError("riccati coefficients: p_tau must be negative at tau=" +
                          fmt17(tau) + ", x=" + fmt17(x));
    const double ptt = law.p_tautau(tau, S);
    if (!(ptt > 0.0))
        throw DomainError("riccati coefficients: p_tautau must be positive at tau=" +
                          fmt17(tau) + ", x=" + fmt17(x));

    RiccatiCoefficients rc;
    rc.a2 = 0.25 * std::pow(np, -1.25) * ptt;

    const double I =
        lattice ? lattice->I_at(tau, x) : compute_I(law, tau, S, sigma);
    const double Imu =
        lattice ? lattice->I_mu_at(tau, x) : compute_I_mu(law, tau, S, sigma);
    const double pm = p_mu(law, tau, S, sigma);
    const double ptm = p_taumu(law, tau, S, sigma);

    rc.ratio_a1 = -2.0 * I - 2.0 * std::pow(np, 0.75) / ptt * ptm +
                  2.0 * std::pow(np, -0.25) * pm;
    rc.ratio_a0 = -4.0 * std::pow(np, 1.75) / ptt *
                      (Imu - 0.5 * (ptm / np + ptt * pm / (np * np)) * I) -
                  std::sqrt(np) / ptt * ptm * pm - pm * pm / std::sqrt(np) - I * I;

    rc.a1 = rc.ratio_a1 * rc.a2;
    rc.a0 = rc.ratio_a0 * rc.a2;

    rc.raw_discriminant = rc.ratio_a1 * rc.ratio_a1 + 4.0 * rc.ratio_a0;
    rc.discriminant = std::max(rc.raw_discriminant, 0.0);
    rc.clamped = rc.raw_discriminant < 0.0;
    rc.violation = rc.raw_discriminant < -1e-10;
    return rc;
}

std::pair<double, double> roots(const RiccatiCoefficients& coeffs) {
    if (!(coeffs.a2 > 0.0))
        throw Error("riccati roots: a2 must be positive, got " + fmt17(coeffs.a2));
    if (coeffs.discriminant < 0.0)
        throw Error("riccati roots: negative discriminant " +
                    fmt17(coeffs.discriminant));
    const double r1 = coeffs.ratio_a1;
    const double r0 = coeffs.ratio_a0;
    const double sq = std::sqrt(coeffs.discriminant);
    // y^2 - r1 y - r0 = 0: sum of roots r1, product -r0
    const double big = 0.5 * (r1 + std::copysign(sq, r1));
    if (big == 0.0) return {0.0, 0.0};
    const double other = -r0 / big;
    return std::minmax(big, other);
}

ThresholdEstimate estimate_N(const PressureLaw& law, const EntropyProfile& profile,
                             const StateBox& box, int n, const ThermoLattice* lattice,
                             std::optional<std::pair<double, double>> data_tau_range) {
    if (n < 2) throw ConfigError("estimate_N: need n >= 2 samples per axis");
    if (!(box.tau_lo > 0.0 && box.tau_hi > box.tau_lo))
        throw DomainError("estimate_N: need 0 < tau_lo < tau_hi");
    if (data_tau_range) {
        if (data_tau_range->first < box.tau_lo * (1.0 - 1e-12) ||
            data_tau_range->second > box.tau_hi * (1.0 + 1e-12))
            throw DomainError(
                "estimate_N: box tau-range [" + fmt17(box.tau_lo) + ", " +
                fmt17(box.tau_hi) + "] does not cover the initial data's range [" +
                fmt17(data_tau_range->first) + ", " + fmt17(data_tau_range->second) +
                "]");
    }

    ThresholdEstimate est;
    est.box = box;
    est.samples_per_axis = n;

    const double log_lo = std::log(box.tau_lo);
    const double log_step = std::log(box.tau_hi / box.tau_lo) / (n - 1);
    for (int ix = 0; ix < n; ++ix) {
        const double x =
            box.x_lo + (box.x_hi - box.x_lo) * ix / (n - 1);
        for (int jt = 0; jt < n; ++jt) {
            const double tau = std::exp(log_lo + jt * log_step);
            const RiccatiCoefficients rc = coefficients(law, profile, tau, x, lattice);
            if (rc.clamped) ++est.clamped_count;
            if (rc.violation) ++est.violation_count;
            est.worst_raw_discriminant =
                std::min(est.worst_raw_discriminant, rc.raw_discriminant);
            const auto [lo, hi] = roots(rc);
            est.sup_abs_lower_root = std::max(est.sup_abs_lower_root, std::abs(lo));
            est.sup_abs_upper_root = std::max(est.sup_abs_upper_root, std::abs(hi));
        }
    }
    est.N_raw = std::max(est.sup_abs_lower_root, est.sup_abs_upper_root);
    est.N = est.safety_factor * est.N_raw;
    return est;
}

Envelopes envelopes(double N, const std::vector<double>& y0,
                    const std::vector<double>& q0) {
    if (y0.empty() || q0.empty())
        throw DomainError("envelopes: initial gradient fields are empty");
    Envelopes env;
    env.Y = std::max(N, *std::max_element(y0.begin(), y0.end()));
    env.Q = std::max(N, *std::max_element(q0.begin(), q0.end()));
    return env;
}

A2GrowthConstants a2_growth_constants(const PressureLaw& law,
                                      const EntropyProfile& profile,
                                      const std::vector<double>& x_points,
                                      const std::vector<double>& tau0, double tau_min,
                                      double Y, double Q) {
    if (x_points.size() != tau0.size() || x_points.empty())
        throw DomainError("a2_growth_constants: x_points and tau0 must be matching "
                          "non-empty arrays");
    if (!(tau_min > 0.0))
        throw DomainError("a2_growth_constants: tau_min must be positive");
    const double A = law.constants().A;
    if (!(A > 0.0))
        throw ConfigError("a2_growth_constants: declared constant A must be positive");

    A2GrowthConstants k;
    k.k16 = 0.5 * (Y + Q);

    for (std::size_t i = 0; i < x_points.size(); ++i) {
        const double S = profile.S(x_points[i]);
        if (tau0[i] < tau_min * (1.0 - 1e-12))
            throw DomainError("a2_growth_constants: initial tau " + fmt17(tau0[i]) +
                              " at x=" + fmt17(x_points[i]) +
                              " lies below tau_min=" + fmt17(tau_min));
        const double quarter_power = integrate(
            [&](double xi) {
                const double np = -law.p_tau(xi, S);
                if (!(np > 0.0))
                    throw DomainError("a2_growth_constants: p_tau must be negative "
                                      "at tau=" + fmt17(xi));
                return std::pow(np, 0.25);
            },
            tau_min, std::max(tau0[i], tau_min), 1e-10, 1e-300);
        k.k17 = std::max(k.k17, quarter_power);

        const double np_min = -law.p_tau(tau_min, S);
        const double ptt_min = law.p_tautau(tau_min, S);
        if (!(np_min > 0.0 && ptt_min > 0.0))
            throw DomainError("a2_growth_constants: structural signs fail at tau_min");
        k.sup_inv_a2_at_tau_min = std::max(
            k.sup_inv_a2_at_tau_min, 4.0 * std::pow(np_min, 1.25) / ptt_min);
    }

    k.k14 = A * k.k16;
    k.k15 = A * k.k17 + k.sup_inv_a2_at_tau_min;
    return k;
}

double blowup_time_bound(double y0, double eps, double k14, double k15) {
    if (!(y0 < 0.0))
        throw DomainError("blowup_time_bound: y0 must be negative, got " + fmt17(y0));
    if (!(eps > 0.0))
        throw DomainError("blowup_time_bound: eps must be positive, got " + fmt17(eps));
    if (!(k14 >= 0.0) || !(k15 > 0.0))
        throw DomainError("blowup_time_bound: need k14 >= 0 and k15 > 0");
    // The bound is the smallest T with (1/k14) ln((k14 T + k15)/k15) reaching
    // the required integral of a2, namely 1/(eps |y0|):
    //   T = (k15/k14) expm1(k14 / (eps |y0|)),  ->  k15/(eps |y0|) as k14 -> 0.
    const double inv = 1.0 / (eps * (-y0)); // total integral of a2 required
    if (k14 == 0.0) return k15 * inv;
    return k15 * std::expm1(k14 * inv) / k14;
}

QuadraticPathTracker::QuadraticPathTracker(double v0, double switch_magnitude)
    : v_(v0),
      switch_mag_(switch_magnitude > 0.0 ? switch_magnitude
                                         : 8.0 * std::max(1.0, std::abs(v0))) {
    normalize();
}

void QuadraticPathTracker::normalize() {
    if (!reciprocal_ && std::abs(v_) > switch_mag_) {
        v_ = 1.0 / v_;
        reciprocal_ = true;
    } else if (reciprocal_ && std::abs(v_) > 1.0 / switch_mag_) {
        v_ = 1.0 / v_;
        reciprocal_ = false;
    }
}

double QuadraticPathTracker::value() const {
    if (!reciprocal_) return v_;
    if (std::abs(v_) < 1e-300) return v_ >= 0.0 ? 1e300 : -1e300;
    const double y = 1.0 / v_;
    return std::clamp(y, -1e300, 1e300);
}

void QuadraticPathTracker::step(double t, double dt, const Coeffs& s1,
                                const Coeffs& s2, const Coeffs& s3,
                                const Coeffs& s4) {
    auto f = [this](double v, const Coeffs& c) {
        if (!reciprocal_) return c.alpha + v * (c.beta + v * c.delta);
        return -c.alpha * v * v - c.beta * v - c.delta;
    };
    const double k1 = f(v_, s1);
    const double k2 = f(v_ + 0.5 * dt * k1, s2);
    const double k3 = f(v_ + 0.5 * dt * k2, s3);
    const double k4 = f(v_ + dt * k3, s4);
    const double next = v_ + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!std::isfinite(next))
        throw Error("quadratic path tracker: non-finite step at t=" + fmt17(t) +
                    " (step size too large for the coefficient magnitudes)");

    if (reciprocal_ && !blown_ && v_ != 0.0 && next != v_ &&
        ((v_ < 0.0 && next >= 0.0) || (v_ > 0.0 && next <= 0.0))) {
        blown_ = true;
        blowup_t_ = t + dt * v_ / (v_ - next);
    }
    v_ = next;
    normalize();
}

} // namespace psys
