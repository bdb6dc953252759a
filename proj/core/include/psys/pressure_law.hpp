#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "psys/common.hpp"

namespace psys {

/// Candidate constants declared alongside a pressure law. The convexity /
/// entropy-coupling checkers verify them; the bound cascade and the
/// linear-growth fit consume them.
struct DeclaredConstants {
    double k = 0.0;                  // pressure sandwich constant, > 1
    double A = 0.0;                  // third-derivative growth constant, > 0
    double k1 = 0.0, k2 = 0.0;       // entropy-coupling sandwich for p_mu
    std::array<double, 8> l{};       // l[0..7] = l1..l8, all > 0
};

/// Abstract pressure law p(tau, S) with analytic partials up to the orders the
/// machinery consumes. tau is specific volume, S entropy. All partials are in
/// (tau, S); the mu-forms (one x-derivative through S(x)) are assembled by
/// free functions in thermo.hpp.
class PressureLaw {
public:
    virtual ~PressureLaw() = default;

    virtual double p(double tau, double S) const = 0;
    virtual double p_tau(double tau, double S) const = 0;
    virtual double p_tautau(double tau, double S) const = 0;
    virtual double p_tautautau(double tau, double S) const = 0;
    virtual double p_S(double tau, double S) const = 0;
    virtual double p_tauS(double tau, double S) const = 0;
    virtual double p_SS(double tau, double S) const = 0;
    virtual double p_tautauS(double tau, double S) const = 0;

    virtual std::string name() const = 0;
    virtual double c_v() const = 0;

    /// Closed-form h(tau, S) = integral of sqrt(-p_tau) from tau to infinity,
    /// when the law has one; the quadrature path is used otherwise.
    virtual std::optional<double> closed_form_h(double /*tau*/, double /*S*/) const {
        return std::nullopt;
    }

    const DeclaredConstants& constants() const { return constants_; }
    void set_constants(const DeclaredConstants& c) { constants_ = c; }

protected:
    DeclaredConstants constants_{};
};

/// p = K exp(S/c_v) tau^{-gamma}, gamma > 1, K > 0.
class GammaLaw : public PressureLaw {
public:
    GammaLaw(double K, double gamma, double c_v);

    double p(double tau, double S) const override;
    double p_tau(double tau, double S) const override;
    double p_tautau(double tau, double S) const override;
    double p_tautautau(double tau, double S) const override;
    double p_S(double tau, double S) const override;
    double p_tauS(double tau, double S) const override;
    double p_SS(double tau, double S) const override;
    double p_tautauS(double tau, double S) const override;

    std::string name() const override { return "gamma-law"; }
    double c_v() const override { return c_v_; }
    std::optional<double> closed_form_h(double tau, double S) const override;

    double K() const { return K_; }
    double gamma() const { return gamma_; }

    /// Exact tightest constants for this law (tau-independent).
    double exact_sandwich_k() const { return 2.0 * gamma_ / (gamma_ - 1.0); }
    double exact_growth_A() const {
        return 4.0 * (gamma_ + 2.0) / (gamma_ + 1.0) - 5.0;
    }

protected:
    /// Unshifted K exp(S/c_v) tau^{-gamma}. Every partial derives from this,
    /// not from the virtual p(), so subclasses that add a constant shift
    /// (whose derivatives all vanish) inherit correct partials.
    double core_p(double tau, double S) const;

private:
    double K_, gamma_, c_v_;
    double check_domain(double tau) const;
};

/// p = K exp(S/c_v) tau^{-gamma} - p_inf. Shares the gamma-law tau-partials;
/// the constant shift breaks the p -> 0 limit, which the checkers report.
class StiffenedGas : public GammaLaw {
public:
    StiffenedGas(double K, double gamma, double p_inf, double c_v);

    double p(double tau, double S) const override;
    // p_tau.. and p_tauS.. are inherited unchanged; the S-partials of the
    // shifted pressure coincide with those of the unshifted core.
    std::string name() const override { return "stiffened"; }

    double p_inf() const { return p_inf_; }

private:
    double p_inf_;
};

/// Construct a builtin law by name ("gamma-law" or "stiffened") from dotted
/// parameters. Throws ConfigError for unknown names or invalid parameters.
std::unique_ptr<PressureLaw> make_pressure_law(
    const std::string& name, const std::map<std::string, double>& params);

} // namespace psys
