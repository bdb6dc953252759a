#pragma once

#include <functional>

#include "psys/common.hpp"

namespace psys {

using Integrand = std::function<double(double)>;

/// Adaptive Gauss-Kronrod (G7/K15) integration of f over [a, b].
/// Splits intervals until the embedded error estimate meets
/// max(rel_tol * |result|, abs_tol); throws QuadratureError if the interval
/// stack exhausts the subdivision budget first.
double integrate(const Integrand& f, double a, double b,
                 double rel_tol = 1e-11, double abs_tol = 1e-300);

struct TailResult {
    double value = 0.0;      // integral over [a, infinity)
    double tail_bound = 0.0; // estimated magnitude of the discarded remainder
    int doublings = 0;       // octaves [a*2^k, a*2^(k+1)] evaluated
};

/// Integral of f over [a, infinity) for integrands with an eventually
/// geometric octave decay (power-law or faster tails). The upper limit is
/// doubled until the modelled remainder drops below rel_tol * |sum|; the
/// modelled remainder is then added as a correction.
/// Throws QuadratureError when the octave increments do not decay
/// (divergent tail) or never stabilise.
TailResult integrate_to_infinity(const Integrand& f, double a,
                                 double rel_tol = 1e-10);

} // namespace psys
