#include "psys/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "psys/quadrature.hpp"

namespace psys {

double p_mu(const PressureLaw& law, double tau, double S, double sigma) {
    return law.p_S(tau, S) * sigma;
}

double p_taumu(const PressureLaw& law, double tau, double S, double sigma) {
    return law.p_tauS(tau, S) * sigma;
}

double p_tautaumu(const PressureLaw& law, double tau, double S, double sigma) {
    return law.p_tautauS(tau, S) * sigma;
}

double p_mumu(const PressureLaw& law, double tau, double S, double sigma) {
    return law.p_SS(tau, S) * sigma * sigma;
}

namespace {

double neg_p_tau(const PressureLaw& law, double tau, double S) {
    const double v = -law.p_tau(tau, S);
    if (!(v > 0.0))
        throw DomainError("sound_speed: p_tau must be negative; at tau=" + fmt17(tau) +
                          ", S=" + fmt17(S) + " got p_tau=" + fmt17(-v));
    return v;
}

// Integrand of I in the tau variable (the h-line measure already folded in):
//   -1/4 [ (-p)^(-1/4) p_taumu + (-p)^(-5/4) p_tautau p_mu ]   at (xi, S)
double I_integrand(const PressureLaw& law, double xi, double S, double sigma) {
    const double np = neg_p_tau(law, xi, S);
    return -0.25 * (std::pow(np, -0.25) * p_taumu(law, xi, S, sigma) +
                    std::pow(np, -1.25) * law.p_tautau(xi, S) * p_mu(law, xi, S, sigma));
}

// Boundary bracket of the integrated-by-parts I_mu, evaluated at one tau.
double I_mu_boundary(const PressureLaw& law, double tau, double S, double sigma) {
    const double np = neg_p_tau(law, tau, S);
    return 0.5 * (0.25 * std::pow(np, -1.25) * p_taumu(law, tau, S, sigma) *
                      p_mu(law, tau, S, sigma) +
                  std::pow(np, -0.25) * p_mumu(law, tau, S, sigma));
}

// Integrand of the I_mu tail integral in the tau variable (measure folded in):
//   -1/8 [ 7/4 (-p)^(-9/4) p_taumu p_tautau p_mu
//          + (-p)^(-5/4) p_tautaumu p_mu
//          + (-p)^(-5/4) p_tautau p_mumu ]
double I_mu_integrand(const PressureLaw& law, double xi, double S, double sigma) {
    const double np = neg_p_tau(law, xi, S);
    const double pm = p_mu(law, xi, S, sigma);
    const double ptt = law.p_tautau(xi, S);
    return -0.125 * (1.75 * std::pow(np, -2.25) * p_taumu(law, xi, S, sigma) * ptt * pm +
                     std::pow(np, -1.25) * p_tautaumu(law, xi, S, sigma) * pm +
                     std::pow(np, -1.25) * ptt * p_mumu(law, xi, S, sigma));
}

} // namespace

double sound_speed(const PressureLaw& law, double tau, double S) {
    return std::sqrt(neg_p_tau(law, tau, S));
}

double compute_h_quadrature(const PressureLaw& law, double tau, double S) {
    if (!(tau > 0.0))
        throw DomainError("compute_h: tau must be positive, got " + fmt17(tau));
    try {
        return integrate_to_infinity(
                   [&](double xi) { return std::sqrt(neg_p_tau(law, xi, S)); }, tau,
                   1e-10)
            .value;
    } catch (const QuadratureError& e) {
        throw QuadratureError(std::string("compute_h: wave-speed tail integral failed "
                                          "(finite tail integral required): ") +
                              e.what());
    }
}

double compute_h(const PressureLaw& law, double tau, double S) {
    if (auto closed = law.closed_form_h(tau, S)) return *closed;
    return compute_h_quadrature(law, tau, S);
}

double compute_I(const PressureLaw& law, double tau, double S, double sigma) {
    if (sigma == 0.0) return 0.0;
    return integrate_to_infinity(
               [&](double xi) { return I_integrand(law, xi, S, sigma); }, tau, 1e-9)
        .value;
}

double compute_I_mu(const PressureLaw& law, double tau, double S, double sigma) {
    if (sigma == 0.0) return 0.0;
    const TailResult tail = integrate_to_infinity(
        [&](double xi) { return I_mu_integrand(law, xi, S, sigma); }, tau, 1e-9);
    const double boundary = I_mu_boundary(law, tau, S, sigma);
    // the bracket is a difference of boundary terms; the far end must vanish
    const double far_tau = tau * std::pow(2.0, tail.doublings);
    const double far_boundary = I_mu_boundary(law, far_tau, S, sigma);
    const double scale = std::max({std::abs(boundary), std::abs(tail.value), 1e-300});
    if (std::abs(far_boundary) > 1e-8 * scale)
        throw QuadratureError("compute_I_mu: boundary term does not decay at large tau "
                              "(value " + fmt17(far_boundary) + " at tau=" +
                              fmt17(far_tau) + ")");
    return boundary + tail.value;
}

GradientPair gradient_pair(const ThermoPoint& pt, double ds_dx, double dr_dx) {
    const double sqrt_c = std::sqrt(pt.c);
    GradientPair g;
    g.y = sqrt_c * ds_dx + pt.p_mu / sqrt_c - pt.I;
    g.q = sqrt_c * dr_dx - pt.p_mu / sqrt_c + pt.I;
    return g;
}

ThermoPoint make_thermo_point(const PressureLaw& law, const EntropyProfile& profile,
                              double tau, double x, const ThermoLattice* lattice) {
    ThermoPoint pt;
    pt.tau = tau;
    pt.x = x;
    pt.S = profile.S(x);
    pt.sigma = profile.S_prime(x);
    pt.c = sound_speed(law, tau, pt.S);
    pt.p = law.p(tau, pt.S);
    pt.p_mu = p_mu(law, tau, pt.S, pt.sigma);
    if (lattice) {
        pt.h = lattice->h_at(tau, x);
        pt.I = lattice->I_at(tau, x);
        pt.I_mu = lattice->I_mu_at(tau, x);
    } else {
        pt.h = compute_h(law, tau, pt.S);
        pt.I = compute_I(law, tau, pt.S, pt.sigma);
        pt.I_mu = compute_I_mu(law, tau, pt.S, pt.sigma);
    }
    const double slack = 1e-9 * std::max({std::abs(pt.p), pt.c * pt.h, 1.0});
    if (pt.p > pt.c * pt.h + slack)
        throw DomainError("thermo point violates p <= c*h at tau=" + fmt17(tau) +
                          ", x=" + fmt17(x) + ": p=" + fmt17(pt.p) + ", c*h=" +
                          fmt17(pt.c * pt.h));
    return pt;
}

ThermoLattice::ThermoLattice(const PressureLaw& law, const EntropyProfile& profile,
                             double tau_lo, double tau_hi, int n_tau,
                             std::vector<double> x_points)
    : law_(law), profile_(profile), tau_lo_(tau_lo), tau_hi_(tau_hi),
      x_points_(std::move(x_points)) {
    if (!(tau_lo > 0.0 && tau_hi > tau_lo))
        throw DomainError("ThermoLattice: need 0 < tau_lo < tau_hi");
    if (n_tau < 8) throw DomainError("ThermoLattice: need at least 8 tau nodes");
    if (x_points_.empty()) throw DomainError("ThermoLattice: need at least one x column");
    if (!std::is_sorted(x_points_.begin(), x_points_.end()))
        throw DomainError("ThermoLattice: x columns must be sorted");

    has_closed_h_ = law.closed_form_h(tau_hi, profile.S(x_points_.front())).has_value();

    std::vector<double> tau_nodes(n_tau), log_nodes(n_tau);
    const double ratio = std::log(tau_hi / tau_lo) / (n_tau - 1);
    for (int j = 0; j < n_tau; ++j) {
        log_nodes[j] = std::log(tau_lo) + j * ratio;
        tau_nodes[j] = std::exp(log_nodes[j]);
    }
    tau_nodes.back() = tau_hi;

    // columns with identical (S, S') carry identical data; build each once
    std::map<std::pair<double, double>, std::size_t> built;
    columns_.resize(x_points_.size());
    for (std::size_t ix = 0; ix < x_points_.size(); ++ix) {
        const double S = profile.S(x_points_[ix]);
        const double sigma = profile.S_prime(x_points_[ix]);
        if (auto it = built.find({S, sigma}); it != built.end()) {
            columns_[ix] = columns_[it->second];
            continue;
        }

        std::vector<double> h_vals(n_tau, 0.0), I_vals(n_tau, 0.0), Imu_vals(n_tau, 0.0);

        // cumulative pass from the top node; the open tail is attached there
        if (sigma != 0.0) {
            I_vals[n_tau - 1] = compute_I(law, tau_nodes[n_tau - 1], S, sigma);
            Imu_vals[n_tau - 1] =
                compute_I_mu(law, tau_nodes[n_tau - 1], S, sigma) -
                I_mu_boundary(law, tau_nodes[n_tau - 1], S, sigma);
            for (int j = n_tau - 2; j >= 0; --j) {
                I_vals[j] = I_vals[j + 1] +
                            integrate(
                                [&](double xi) { return I_integrand(law, xi, S, sigma); },
                                tau_nodes[j], tau_nodes[j + 1], 1e-10, 1e-305);
                Imu_vals[j] =
                    Imu_vals[j + 1] +
                    integrate(
                        [&](double xi) { return I_mu_integrand(law, xi, S, sigma); },
                        tau_nodes[j], tau_nodes[j + 1], 1e-10, 1e-305);
            }
            for (int j = 0; j < n_tau; ++j)
                Imu_vals[j] += I_mu_boundary(law, tau_nodes[j], S, sigma);
        }
        if (!has_closed_h_) {
            h_vals[n_tau - 1] = compute_h_quadrature(law, tau_nodes[n_tau - 1], S);
            for (int j = n_tau - 2; j >= 0; --j)
                h_vals[j] = h_vals[j + 1] +
                            integrate(
                                [&](double xi) {
                                    return std::sqrt(neg_p_tau(law, xi, S));
                                },
                                tau_nodes[j], tau_nodes[j + 1], 1e-11, 1e-305);
        }

        Column col;
        if (!has_closed_h_) col.h = MonotoneCubic(log_nodes, h_vals);
        col.I = MonotoneCubic(log_nodes, I_vals);
        col.I_mu = MonotoneCubic(log_nodes, Imu_vals);
        columns_[ix] = col;
        built.emplace(std::make_pair(S, sigma), ix);
    }
}

double ThermoLattice::eval(
    double tau, double x,
    const std::function<double(const Column&, double)>& pick) const {
    if (tau < tau_lo_ * (1.0 - 1e-12) || tau > tau_hi_ * (1.0 + 1e-12))
        clamp_count_.fetch_add(1, std::memory_order_relaxed);
    const double t = std::log(std::clamp(tau, tau_lo_, tau_hi_));

    if (x_points_.size() == 1) return pick(columns_.front(), t);
    auto it = std::upper_bound(x_points_.begin(), x_points_.end(), x);
    if (it == x_points_.begin()) return pick(columns_.front(), t);
    if (it == x_points_.end()) return pick(columns_.back(), t);
    const std::size_t hi = static_cast<std::size_t>(it - x_points_.begin());
    const std::size_t lo = hi - 1;
    const double w = (x - x_points_[lo]) / (x_points_[hi] - x_points_[lo]);
    return lerp_clamped(pick(columns_[lo], t), pick(columns_[hi], t), w);
}

double ThermoLattice::h_at(double tau, double x) const {
    if (has_closed_h_) return *law_.closed_form_h(tau, profile_.S(x));
    return eval(tau, x, [](const Column& c, double t) { return c.h(t); });
}

double ThermoLattice::I_at(double tau, double x) const {
    return eval(tau, x, [](const Column& c, double t) { return c.I(t); });
}

double ThermoLattice::I_mu_at(double tau, double x) const {
    return eval(tau, x, [](const Column& c, double t) { return c.I_mu(t); });
}

CumulativeTauTable::CumulativeTauTable(const std::function<double(double, double)>& g,
                                       double tau_ref, double tau_hi, int n_tau,
                                       std::vector<double> x_points)
    : tau_ref_(tau_ref), tau_hi_(tau_hi), x_points_(std::move(x_points)) {
    if (!(tau_ref > 0.0 && tau_hi > tau_ref))
        throw DomainError("CumulativeTauTable: need 0 < tau_ref < tau_hi");
    if (n_tau < 4) throw DomainError("CumulativeTauTable: need at least 4 tau nodes");

    std::vector<double> tau_nodes(n_tau), log_nodes(n_tau);
    const double step = std::log(tau_hi / tau_ref) / (n_tau - 1);
    for (int j = 0; j < n_tau; ++j) {
        log_nodes[j] = std::log(tau_ref) + j * step;
        tau_nodes[j] = std::exp(log_nodes[j]);
    }
    tau_nodes.front() = tau_ref;
    tau_nodes.back() = tau_hi;

    columns_.reserve(x_points_.size());
    for (double x : x_points_) {
        std::vector<double> vals(n_tau, 0.0);
        for (int j = 1; j < n_tau; ++j)
            vals[j] = vals[j - 1] +
                      integrate([&](double xi) { return g(xi, x); }, tau_nodes[j - 1],
                                tau_nodes[j], 1e-10, 1e-305);
        columns_.emplace_back(log_nodes, vals);
    }
}

double CumulativeTauTable::at(double tau, double x) const {
    const double t = std::log(std::clamp(tau, tau_ref_, tau_hi_));
    if (x_points_.size() == 1) return columns_.front()(t);
    auto it = std::upper_bound(x_points_.begin(), x_points_.end(), x);
    if (it == x_points_.begin()) return columns_.front()(t);
    if (it == x_points_.end()) return columns_.back()(t);
    const std::size_t hi = static_cast<std::size_t>(it - x_points_.begin());
    const std::size_t lo = hi - 1;
    const double w = (x - x_points_[lo]) / (x_points_[hi] - x_points_[lo]);
    return lerp_clamped(columns_[lo](t), columns_[hi](t), w);
}

} // namespace psys
