#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "psys/common.hpp"

namespace psys {

/// Shape-preserving cubic interpolant (Fritsch-Carlson slopes): never
/// overshoots the data, reproduces monotone data monotonically.
class MonotoneCubic {
public:
    MonotoneCubic() = default;
    MonotoneCubic(std::vector<double> t, std::vector<double> v);

    double operator()(double t) const;
    bool empty() const { return t_.empty(); }
    double t_front() const { return t_.front(); }
    double t_back() const { return t_.back(); }

private:
    std::vector<double> t_, v_, d_;
};

inline MonotoneCubic::MonotoneCubic(std::vector<double> t, std::vector<double> v)
    : t_(std::move(t)), v_(std::move(v)) {
    const std::size_t n = t_.size();
    if (n < 2 || v_.size() != n)
        throw DomainError("MonotoneCubic: need >= 2 nodes and matching values");
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (!(t_[i] < t_[i + 1]))
            throw DomainError("MonotoneCubic: nodes must be strictly increasing");

    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = t_[i + 1] - t_[i];
        delta[i] = (v_[i + 1] - v_[i]) / h[i];
    }

    d_.assign(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] == 0.0 || delta[i] == 0.0 ||
            (delta[i - 1] > 0.0) != (delta[i] > 0.0)) {
            d_[i] = 0.0;
        } else {
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            d_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
    auto end_slope = [](double h0, double h1, double d0, double d1) {
        double d = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (d * d0 <= 0.0) return 0.0;
        if (d0 * d1 <= 0.0 && std::abs(d) > 3.0 * std::abs(d0)) return 3.0 * d0;
        return d;
    };
    if (n == 2) {
        d_[0] = d_[1] = delta[0];
    } else {
        d_[0] = end_slope(h[0], h[1], delta[0], delta[1]);
        d_[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    }
}

inline double MonotoneCubic::operator()(double t) const {
    const std::size_t n = t_.size();
    if (t <= t_.front()) t = t_.front();
    if (t >= t_.back()) t = t_.back();
    std::size_t lo = 0, hi = n - 1;
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        (t_[mid] <= t ? lo : hi) = mid;
    }
    const double h = t_[lo + 1] - t_[lo];
    const double u = (t - t_[lo]) / h;
    const double u2 = u * u, u3 = u2 * u;
    return v_[lo] * (2.0 * u3 - 3.0 * u2 + 1.0) + v_[lo + 1] * (3.0 * u2 - 2.0 * u3) +
           h * (d_[lo] * (u3 - 2.0 * u2 + u) + d_[lo + 1] * (u3 - u2));
}

inline double lerp_clamped(double a, double b, double w) {
    if (w <= 0.0) return a;
    if (w >= 1.0) return b;
    return a + (b - a) * w;
}

} // namespace psys
