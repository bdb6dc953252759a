#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "psys/common.hpp"

namespace psys {

/// Maximal interval on which S is monotone; sign is +1 (increasing),
/// -1 (decreasing) or 0 (flat).
struct MonotoneSegment {
    double x_lo = 0.0;
    double x_hi = 0.0;
    int sign = 0;
};

/// Frozen entropy field S(x) with one continuous derivative. The weight
/// m(x) = exp(S / (2 c_v)) can be overridden by subclasses; it must stay
/// positive and be a function of S alone.
class EntropyProfile {
public:
    explicit EntropyProfile(double c_v) : c_v_(c_v) {
        if (!(c_v > 0.0))
            throw ConfigError("entropy profile: c_v must be positive, got " + fmt17(c_v));
    }
    virtual ~EntropyProfile() = default;

    virtual double S(double x) const = 0;
    virtual double S_prime(double x) const = 0;
    virtual std::string name() const = 0;

    virtual double m(double x) const;
    virtual double m_prime_over_m(double x) const;

    double c_v() const { return c_v_; }

    /// Decompose [a, b] into maximal monotone pieces of S (numeric scan plus
    /// bisection on sign changes of S').
    std::vector<MonotoneSegment> monotone_segments(double a, double b) const;

    /// Total variation of log m over [a, b]: integral of |m'/m| dx, evaluated
    /// by quadrature segment by segment.
    double total_variation(double a, double b) const;

    /// Same quantity summed as |log m| increments over monotone segments;
    /// kept as an independent cross-check of total_variation.
    double variation_from_log_increments(double a, double b) const;

    /// Range of the weight m over [a, b]: {k_ml, k_mr} = {inf m, sup m}.
    std::pair<double, double> weight_range(double a, double b) const;

private:
    double c_v_;
};

class ConstantEntropy : public EntropyProfile {
public:
    ConstantEntropy(double S0, double c_v) : EntropyProfile(c_v), S0_(S0) {}
    double S(double) const override { return S0_; }
    double S_prime(double) const override { return 0.0; }
    std::string name() const override { return "constant"; }

private:
    double S0_;
};

class TanhEntropy : public EntropyProfile {
public:
    TanhEntropy(double amplitude, double center, double width, double c_v);
    double S(double x) const override;
    double S_prime(double x) const override;
    std::string name() const override { return "tanh"; }

private:
    double amplitude_, center_, width_;
};

/// amplitude * sin(2 pi x / period) under a raised-cosine window supported on
/// |x| <= window / 2 (C^1 across the cut-off).
class SineBumpEntropy : public EntropyProfile {
public:
    SineBumpEntropy(double amplitude, double period, double window, double c_v);
    double S(double x) const override;
    double S_prime(double x) const override;
    std::string name() const override { return "sine-bump"; }

private:
    double amplitude_, period_, window_;
};

/// Piecewise-linear interpolation through knots with quadratic corner fillets
/// of half-width `smoothing` (C^1); constant extension outside the knot range.
class PiecewiseLinearEntropy : public EntropyProfile {
public:
    PiecewiseLinearEntropy(std::vector<std::pair<double, double>> knots,
                           double smoothing, double c_v);
    double S(double x) const override;
    double S_prime(double x) const override;
    std::string name() const override { return "piecewise-linear-smoothed"; }

private:
    std::vector<std::pair<double, double>> knots_;
    double smoothing_;
    double slope(std::size_t segment) const; // slope left of knot segment+1
};

/// Construct a builtin profile by name. `params` carries the scalar
/// parameters; piecewise knots are passed as "x0:S0,x1:S1,..." in `knots`.
std::unique_ptr<EntropyProfile> make_entropy_profile(
    const std::string& name, const std::map<std::string, double>& params,
    const std::string& knots, double c_v);

} // namespace psys
