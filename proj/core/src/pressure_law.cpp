#include "psys/pressure_law.hpp"

#include <algorithm>
#include <cmath>

namespace psys {

GammaLaw::GammaLaw(double K, double gamma, double c_v)
    : K_(K), gamma_(gamma), c_v_(c_v) {
    if (!(K > 0.0)) throw ConfigError("gamma-law: K must be positive, got " + fmt17(K));
    if (!(gamma > 1.0))
        throw ConfigError("gamma-law: gamma must exceed 1, got " + fmt17(gamma));
    if (!(c_v > 0.0))
        throw ConfigError("gamma-law: c_v must be positive, got " + fmt17(c_v));
    // Exact candidates where the law admits tau-independent ones; deliberately
    // wide candidates for the box-dependent ratios (l1, l2) and the
    // profile-dependent ones (l5, l6) so default checks are informative rather
    // than failing. Tighten per run via set_constants.
    constants_.k = exact_sandwich_k();
    constants_.A = std::max(exact_growth_A(), 1e-12);
    constants_.k1 = constants_.k2 = 0.5;
    // l5 sits under the upper bound of the p_mumu sandwich and l6 under the
    // lower one, so "wide" means l5 small and l6 large.
    constants_.l = {1e6, 1e-6, 0.5, 0.5, 1e-6, 1e6, 0.5, 0.5};
}

double GammaLaw::check_domain(double tau) const {
    if (!(tau > 0.0))
        throw DomainError("gamma-law: tau must be positive, got " + fmt17(tau));
    return tau;
}

double GammaLaw::core_p(double tau, double S) const {
    check_domain(tau);
    return K_ * std::exp(S / c_v_) * std::pow(tau, -gamma_);
}

double GammaLaw::p(double tau, double S) const { return core_p(tau, S); }

double GammaLaw::p_tau(double tau, double S) const {
    return -gamma_ * core_p(tau, S) / tau;
}

double GammaLaw::p_tautau(double tau, double S) const {
    return gamma_ * (gamma_ + 1.0) * core_p(tau, S) / (tau * tau);
}

double GammaLaw::p_tautautau(double tau, double S) const {
    return -gamma_ * (gamma_ + 1.0) * (gamma_ + 2.0) * core_p(tau, S) /
           (tau * tau * tau);
}

double GammaLaw::p_S(double tau, double S) const { return core_p(tau, S) / c_v_; }

double GammaLaw::p_tauS(double tau, double S) const {
    return -gamma_ * core_p(tau, S) / (tau * c_v_);
}

double GammaLaw::p_SS(double tau, double S) const {
    return core_p(tau, S) / (c_v_ * c_v_);
}

double GammaLaw::p_tautauS(double tau, double S) const {
    return gamma_ * (gamma_ + 1.0) * core_p(tau, S) / (tau * tau * c_v_);
}

std::optional<double> GammaLaw::closed_form_h(double tau, double S) const {
    check_domain(tau);
    // integral of sqrt(gamma K e^{S/c_v}) xi^{-(gamma+1)/2} from tau to infinity
    return 2.0 * std::sqrt(gamma_ * K_) * std::exp(0.5 * S / c_v_) /
           (gamma_ - 1.0) * std::pow(tau, -0.5 * (gamma_ - 1.0));
}

StiffenedGas::StiffenedGas(double K, double gamma, double p_inf, double c_v)
    : GammaLaw(K, gamma, c_v), p_inf_(p_inf) {
    if (!(p_inf >= 0.0))
        throw ConfigError("stiffened: p_inf must be non-negative, got " + fmt17(p_inf));
}

double StiffenedGas::p(double tau, double S) const {
    return GammaLaw::p(tau, S) - p_inf_;
}

namespace {

double require_param(const std::map<std::string, double>& params,
                     const std::string& key, const std::string& law) {
    auto it = params.find(key);
    if (it == params.end())
        throw ConfigError(law + ": missing required parameter '" + key + "'");
    return it->second;
}

double param_or(const std::map<std::string, double>& params,
                const std::string& key, double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

} // namespace

std::unique_ptr<PressureLaw> make_pressure_law(
    const std::string& name, const std::map<std::string, double>& params) {
    if (name == "gamma-law") {
        return std::make_unique<GammaLaw>(require_param(params, "K", name),
                                          require_param(params, "gamma", name),
                                          param_or(params, "c_v", 1.0));
    }
    if (name == "stiffened") {
        return std::make_unique<StiffenedGas>(require_param(params, "K", name),
                                              require_param(params, "gamma", name),
                                              require_param(params, "p_inf", name),
                                              param_or(params, "c_v", 1.0));
    }
    throw ConfigError("unknown pressure law '" + name +
                      "' (expected 'gamma-law' or 'stiffened')");
}

} // namespace psys
