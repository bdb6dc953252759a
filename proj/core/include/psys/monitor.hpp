#pragma once

#include <string>
#include <vector>

#include "psys/bounds.hpp"
#include "psys/riccati.hpp"
#include "psys/solver.hpp"

namespace psys {

/// One monitored inequality: its worst relative margin over the run, where it
/// happened, and the first violation (margin below -slack) if any. step_margins
/// holds the per-stored-level worst-over-x margin (NaN where the check does not
/// apply, e.g. initial-data checks after t = 0).
struct MonitorCheck {
    std::string name;
    double slack = 1e-3;
    double worst_margin = 0.0;
    double worst_time = 0.0;
    double worst_x = 0.0;
    long violations = 0;
    bool violated = false;
    double first_violation_time = 0.0;
    double first_violation_x = 0.0;
    bool evaluated = false; // false when no applicable sample existed
    std::string note;
    std::vector<double> step_margins;
};

struct MonitorInputs {
    BoundConstants bounds;
    double tau_min = 0.0;
    double c_max = 0.0;
    double p_max = 0.0;
    double Y = 0.0;
    double Q = 0.0;
    A2GrowthConstants growth;
    /// Proved bounds hold for exact solutions; this relative slack absorbs the
    /// discretization error of the scheme.
    double slack = 1e-3;
    /// Slack for the directional-derivative sandwich. It is re-evaluated
    /// pointwise (the characteristic derivative of s equals -p_S * S' exactly
    /// for smooth fields), so for laws whose declared k1 = k2 the sandwich
    /// degenerates to an equality and only roundoff needs absorbing; a looser
    /// default is kept for laws with a strict sandwich.
    double ds_dt_slack = 5e-2;
    /// Monitoring stops at the first stored level whose max(|y|, |q|) reaches
    /// this value: past the gradient sentinel the solution is no longer
    /// classical and the bounds are not claimed.
    double sentinel = 0.0; // <= 0: monitor every stored level
};

struct MonitorLog {
    std::vector<MonitorCheck> checks;
    std::vector<double> times; // stored level times actually monitored
    std::size_t levels_monitored = 0;
    std::size_t levels_total = 0;
    long total_violations = 0;
    bool all_passed = true;

    const MonitorCheck* find(const std::string& name) const;
};

/// Canonical list of monitored-inequality names, in emission order.
std::vector<std::string> monitor_manifest();

/// Evaluate every monitored inequality at every stored level of a run.
/// Violations are logged, never thrown: a violated proved bound indicates a
/// numerical or configuration bug and is surfaced in the report.
MonitorLog monitor_run(const PSystem& system, const Trajectory& trajectory,
                       const MonitorInputs& inputs);

} // namespace psys
