#include "psys/entropy_profile.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "psys/quadrature.hpp"

namespace psys {

double EntropyProfile::m(double x) const { return std::exp(0.5 * S(x) / c_v_); }

double EntropyProfile::m_prime_over_m(double x) const {
    return 0.5 * S_prime(x) / c_v_;
}

std::vector<MonotoneSegment> EntropyProfile::monotone_segments(double a,
                                                               double b) const {
    if (!(a < b)) throw DomainError("monotone_segments: need a < b");
    constexpr int kScan = 2048;
    const double dx = (b - a) / kScan;

    auto sgn = [this](double x) {
        const double d = S_prime(x);
        const double eps = 1e-14 * (1.0 + std::abs(S(x)));
        if (d > eps) return 1;
        if (d < -eps) return -1;
        return 0;
    };

    // locate sign changes of S' by bisection on scan brackets
    std::vector<double> cuts{a};
    int prev = sgn(a);
    double prev_x = a;
    for (int i = 1; i <= kScan; ++i) {
        const double x = (i == kScan) ? b : a + i * dx;
        const int cur = sgn(x);
        if (cur != prev && prev != 0 && cur != 0) {
            double lo = prev_x, hi = x;
            for (int it = 0; it < 80 && hi - lo > 1e-14 * (1.0 + std::abs(hi)); ++it) {
                const double mid = 0.5 * (lo + hi);
                (sgn(mid) == prev ? lo : hi) = mid;
            }
            cuts.push_back(0.5 * (lo + hi));
        }
        if (cur != 0) prev = cur;
        prev_x = x;
    }
    cuts.push_back(b);
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [b, a](double u, double v) {
                               return std::abs(u - v) < 1e-12 * (b - a);
                           }),
               cuts.end());

    std::vector<MonotoneSegment> segments;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        MonotoneSegment seg{cuts[i], cuts[i + 1], 0};
        const double s_lo = S(seg.x_lo), s_hi = S(seg.x_hi);
        const double eps = 1e-13 * (1.0 + std::max(std::abs(s_lo), std::abs(s_hi)));
        if (s_hi > s_lo + eps) seg.sign = 1;
        else if (s_hi < s_lo - eps) seg.sign = -1;
        segments.push_back(seg);
    }
    if (segments.empty()) segments.push_back({a, b, 0});
    return segments;
}

double EntropyProfile::total_variation(double a, double b) const {
    double v = 0.0;
    for (const auto& seg : monotone_segments(a, b)) {
        if (seg.sign == 0) continue;
        v += std::abs(integrate([this](double x) { return m_prime_over_m(x); },
                                seg.x_lo, seg.x_hi, 1e-11, 1e-14));
    }
    return v;
}

double EntropyProfile::variation_from_log_increments(double a, double b) const {
    double v = 0.0;
    for (const auto& seg : monotone_segments(a, b))
        v += std::abs(std::log(m(seg.x_hi)) - std::log(m(seg.x_lo)));
    return v;
}

std::pair<double, double> EntropyProfile::weight_range(double a, double b) const {
    double lo = m(a), hi = m(a);
    for (const auto& seg : monotone_segments(a, b)) {
        for (double x : {seg.x_lo, seg.x_hi}) {
            const double w = m(x);
            lo = std::min(lo, w);
            hi = std::max(hi, w);
        }
    }
    return {lo, hi};
}

TanhEntropy::TanhEntropy(double amplitude, double center, double width, double c_v)
    : EntropyProfile(c_v), amplitude_(amplitude), center_(center), width_(width) {
    if (!(width > 0.0))
        throw ConfigError("tanh entropy: width must be positive, got " + fmt17(width));
}

double TanhEntropy::S(double x) const {
    return amplitude_ * std::tanh((x - center_) / width_);
}

double TanhEntropy::S_prime(double x) const {
    const double t = std::tanh((x - center_) / width_);
    return amplitude_ / width_ * (1.0 - t * t);
}

SineBumpEntropy::SineBumpEntropy(double amplitude, double period, double window,
                                 double c_v)
    : EntropyProfile(c_v), amplitude_(amplitude), period_(period), window_(window) {
    if (!(period > 0.0))
        throw ConfigError("sine-bump entropy: period must be positive");
    if (!(window > 0.0))
        throw ConfigError("sine-bump entropy: window must be positive");
}

double SineBumpEntropy::S(double x) const {
    if (std::abs(x) >= 0.5 * window_) return 0.0;
    const double w = std::cos(M_PI * x / window_);
    return amplitude_ * std::sin(2.0 * M_PI * x / period_) * w * w;
}

double SineBumpEntropy::S_prime(double x) const {
    if (std::abs(x) >= 0.5 * window_) return 0.0;
    const double phase = 2.0 * M_PI * x / period_;
    const double w = std::cos(M_PI * x / window_);
    const double w_prime = -M_PI / window_ * std::sin(2.0 * M_PI * x / window_);
    return amplitude_ * (2.0 * M_PI / period_ * std::cos(phase) * w * w +
                         std::sin(phase) * w_prime);
}

PiecewiseLinearEntropy::PiecewiseLinearEntropy(
    std::vector<std::pair<double, double>> knots, double smoothing, double c_v)
    : EntropyProfile(c_v), knots_(std::move(knots)), smoothing_(smoothing) {
    if (knots_.size() < 2)
        throw ConfigError("piecewise entropy: need at least two knots");
    if (!(smoothing_ > 0.0))
        throw ConfigError("piecewise entropy: smoothing must be positive");
    for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
        const double gap = knots_[i + 1].first - knots_[i].first;
        if (!(gap > 0.0))
            throw ConfigError("piecewise entropy: knot x-values must be strictly increasing");
        if (smoothing_ > 0.5 * gap)
            throw ConfigError("piecewise entropy: smoothing " + fmt17(smoothing_) +
                              " exceeds half the knot spacing " + fmt17(gap));
    }
}

double PiecewiseLinearEntropy::slope(std::size_t segment) const {
    // slope of the linear piece between knot `segment` and `segment + 1`;
    // constant extension contributes slope 0 outside the knot range
    if (segment == 0 || segment >= knots_.size()) return 0.0;
    const auto& [xl, sl] = knots_[segment - 1];
    const auto& [xr, sr] = knots_[segment];
    return (sr - sl) / (xr - xl);
}

double PiecewiseLinearEntropy::S(double x) const {
    // quadratic fillet of half-width `smoothing` around each knot
    for (std::size_t i = 0; i < knots_.size(); ++i) {
        const auto& [xk, sk] = knots_[i];
        if (x < xk - smoothing_) {
            const double ml = slope(i);
            return sk + ml * (x - xk);
        }
        if (x <= xk + smoothing_) {
            const double ml = slope(i), mr = slope(i + 1);
            const double u = x - xk + smoothing_;
            return sk + ml * (x - xk) + (mr - ml) * u * u / (4.0 * smoothing_);
        }
    }
    return knots_.back().second;
}

double PiecewiseLinearEntropy::S_prime(double x) const {
    for (std::size_t i = 0; i < knots_.size(); ++i) {
        const auto& [xk, sk] = knots_[i];
        (void)sk;
        if (x < xk - smoothing_) return slope(i);
        if (x <= xk + smoothing_) {
            const double ml = slope(i), mr = slope(i + 1);
            return ml + (mr - ml) * (x - xk + smoothing_) / (2.0 * smoothing_);
        }
    }
    return 0.0;
}

namespace {

double param_or(const std::map<std::string, double>& params, const std::string& key,
                double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

double require_param(const std::map<std::string, double>& params,
                     const std::string& key, const std::string& profile) {
    auto it = params.find(key);
    if (it == params.end())
        throw ConfigError(profile + " entropy: missing required parameter '" + key + "'");
    return it->second;
}

std::vector<std::pair<double, double>> parse_knots(const std::string& text) {
    std::vector<std::pair<double, double>> knots;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos)
            throw ConfigError("piecewise entropy: knot '" + item +
                              "' is not of the form x:S");
        try {
            knots.emplace_back(std::stod(item.substr(0, colon)),
                               std::stod(item.substr(colon + 1)));
        } catch (const std::exception&) {
            throw ConfigError("piecewise entropy: cannot parse knot '" + item + "'");
        }
    }
    return knots;
}

} // namespace

std::unique_ptr<EntropyProfile> make_entropy_profile(
    const std::string& name, const std::map<std::string, double>& params,
    const std::string& knots, double c_v) {
    if (name == "constant")
        return std::make_unique<ConstantEntropy>(param_or(params, "S0", 0.0), c_v);
    if (name == "tanh")
        return std::make_unique<TanhEntropy>(require_param(params, "amplitude", name),
                                             param_or(params, "center", 0.0),
                                             require_param(params, "width", name), c_v);
    if (name == "sine-bump")
        return std::make_unique<SineBumpEntropy>(
            require_param(params, "amplitude", name),
            require_param(params, "period", name),
            require_param(params, "window", name), c_v);
    if (name == "piecewise-linear-smoothed")
        return std::make_unique<PiecewiseLinearEntropy>(
            parse_knots(knots), require_param(params, "smoothing", name), c_v);
    throw ConfigError("unknown entropy profile '" + name + "'");
}

} // namespace psys
