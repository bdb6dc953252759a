#include "psys/quadrature.hpp"

#include <cmath>
#include <queue>
#include <vector>

namespace psys {
namespace {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1] (positive half; symmetric).
constexpr int kKronrod = 8;
constexpr double kXgk[kKronrod] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[kKronrod] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelEstimate {
    double value = 0.0;
    double error = 0.0;
};

PanelEstimate gauss_kronrod(const Integrand& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double f_mid = f(mid);
    double kronrod = kWgk[7] * f_mid;
    double gauss = kWg[3] * f_mid;
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double fsum = f(mid - dx) + f(mid + dx);
        kronrod += kWgk[j] * fsum;
        if (j % 2 == 1) gauss += kWg[j / 2] * fsum;
    }
    PanelEstimate est;
    est.value = kronrod * half;
    est.error = std::abs((kronrod - gauss) * half);
    return est;
}

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& other) const { return error < other.error; }
};

} // namespace

double integrate(const Integrand& f, double a, double b, double rel_tol,
                 double abs_tol) {
    if (a == b) return 0.0;
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }

    std::priority_queue<Segment> heap;
    PanelEstimate whole = gauss_kronrod(f, a, b);
    heap.push({a, b, whole.value, whole.error});
    double total_value = whole.value;
    double total_error = whole.error;

    constexpr int kMaxSplits = 4000;
    for (int split = 0; split < kMaxSplits; ++split) {
        if (total_error <= std::max(rel_tol * std::abs(total_value), abs_tol))
            return sign * total_value;

        Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // interval of one ulp cannot be split further; accept as-is
            heap.push({worst.a, worst.b, worst.value, 0.0});
            total_error -= worst.error;
            continue;
        }
        PanelEstimate left = gauss_kronrod(f, worst.a, mid);
        PanelEstimate right = gauss_kronrod(f, mid, worst.b);
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        heap.push({worst.a, mid, left.value, left.error});
        heap.push({mid, worst.b, right.value, right.error});
    }
    if (total_error <= std::max(rel_tol * std::abs(total_value), abs_tol) * 10.0)
        return sign * total_value; // close enough: error estimate is conservative
    throw QuadratureError("integrate: failed to converge on [" + fmt17(a) + ", " +
                          fmt17(b) + "], error estimate " + fmt17(total_error));
}

TailResult integrate_to_infinity(const Integrand& f, double a, double rel_tol) {
    if (!(a > 0.0))
        throw QuadratureError("integrate_to_infinity: lower limit must be positive, got " +
                              fmt17(a));

    TailResult result;
    constexpr int kMaxOctaves = 200;
    const double panel_tol = std::max(rel_tol * 0.01, 1e-13);

    double prev_abs = -1.0;
    double ratio_prev = -1.0;
    int nondecaying = 0;
    int zero_octaves = 0;

    double lo = a;
    for (int k = 0; k < kMaxOctaves; ++k) {
        const double hi = lo * 2.0;
        const double increment = integrate(f, lo, hi, panel_tol, 1e-305);
        result.value += increment;
        result.doublings = k + 1;

        const double inc_abs = std::abs(increment);
        const double scale = std::max(std::abs(result.value), 1e-300);
        if (inc_abs <= 1e-305 || inc_abs <= 1e-18 * scale) {
            if (++zero_octaves >= 2) {
                result.tail_bound = inc_abs;
                return result;
            }
        } else {
            zero_octaves = 0;
        }

        if (prev_abs > 0.0 && inc_abs > 0.0) {
            const double ratio = inc_abs / prev_abs;
            if (ratio >= 0.999) {
                if (++nondecaying >= 8 && inc_abs > rel_tol * scale)
                    throw QuadratureError(
                        "integrate_to_infinity: octave increments do not decay "
                        "(last increment " + fmt17(increment) + " at [" +
                        fmt17(lo) + ", " + fmt17(hi) + "]); integral appears divergent");
            } else {
                nondecaying = 0;
                // once the decay ratio is stable, model the remainder as geometric
                if (ratio_prev > 0.0 && std::abs(ratio - ratio_prev) < 0.02 && k >= 3) {
                    const double leftover = inc_abs * ratio / (1.0 - ratio);
                    if (leftover <= 0.5 * rel_tol * scale) {
                        result.value += (increment < 0.0 ? -leftover : leftover);
                        result.tail_bound = leftover;
                        return result;
                    }
                }
            }
            ratio_prev = ratio;
        }
        prev_abs = inc_abs;
        lo = hi;
        if (!std::isfinite(result.value))
            throw QuadratureError("integrate_to_infinity: non-finite partial sum");
    }
    throw QuadratureError(
        "integrate_to_infinity: tail did not stabilise after 200 octaves from " +
        fmt17(a));
}

} // namespace psys
