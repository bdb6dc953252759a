#pragma once

#include <vector>

#include "psys/solver.hpp"

namespace psys {

/// A gradient trajectory integrated along a characteristic of a stored run.
/// The path x(t) follows dx/dt = direction * c through the bilinearly
/// interpolated field; alongside it the quadratic gradient ODE is advanced
/// with the hybrid direct/reciprocal tracker, so the pole (gradient blow-up)
/// is crossed and timestamped rather than overflowed.
///
/// Per stored time level the trace records the path position, the integrated
/// gradient `v`, the field-derived gradient `v_fd` (y for forward paths, q
/// for backward ones, sampled at the path position), and the local ODE
/// coefficients a0, a1, a2.
struct CharacteristicPath {
    int direction = +1;     // +1: dx/dt = +c (tracks y), -1: dx/dt = -c (tracks q)
    bool truncated = false; // left the domain or hit unusable field data
    bool blew_up = false;
    double blowup_t = 0.0;
    std::vector<double> t, x, v, v_fd, a0, a1, a2;
};

struct TraceOptions {
    /// Seed value for the gradient ODE; used only when use_field_seed is off.
    double v0 = 0.0;
    /// Seed from the field-derived gradient at the starting position (default).
    bool use_field_seed = true;
};

/// Trace one characteristic through a stored trajectory starting at x0 on the
/// first stored level. direction must be +1 or -1. The system must be the one
/// that produced the trajectory (grids must agree).
CharacteristicPath trace_characteristic(const PSystem& system,
                                        const Trajectory& trajectory, double x0,
                                        int direction,
                                        const TraceOptions& options = {});

} // namespace psys
