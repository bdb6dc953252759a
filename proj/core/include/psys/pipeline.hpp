#pragma once

#include <memory>
#include <string>
#include <vector>

#include "psys/bounds.hpp"
#include "psys/config.hpp"
#include "psys/hypotheses.hpp"
#include "psys/monitor.hpp"
#include "psys/report_io.hpp"
#include "psys/riccati.hpp"
#include "psys/solver.hpp"
#include "psys/thermo.hpp"

namespace psys {

struct CommandResult {
    int exit_code = 0;
    std::string message; // human-readable summary for stdout
};

/// Every object a full simulation pipeline produces, with owning lifetimes
/// (the system references the law, profile and lattice).
struct SimulationArtifacts {
    std::unique_ptr<PressureLaw> law;
    std::unique_ptr<EntropyProfile> profile;
    std::unique_ptr<ThermoLattice> lattice;
    std::unique_ptr<PSystem> system;
    InitialData initial;
    double k_s = 0.0, k_r = 0.0; // initial invariant bounds with 1% headroom
    BoundConstants bounds;
    TauMinResult tau_min;
    bool segments_extrapolated = false; // profile has > 3 monotone segments
    ThresholdEstimate threshold;
    Envelopes env;
    A2GrowthConstants growth;
    RunResult run_result;
    BlowupReport blowup;
    MonitorLog monitors;
};

/// lattice -> bounds -> tau_min -> N, Y, Q -> growth -> run -> monitors.
SimulationArtifacts run_simulation(const RunConfig& config);

/// The full report document (threshold / envelopes / a2_bound / blowup_bound /
/// bounds / tau_min / run / monitors).
Json report_json(const RunConfig& config, const SimulationArtifacts& art);

CommandResult cmd_check(const RunConfig& config, const std::string& out_dir);
CommandResult cmd_simulate(const RunConfig& config, const std::string& out_dir);
CommandResult cmd_trace(const RunConfig& config, const std::string& out_dir,
                        std::vector<double> seeds, int direction);
CommandResult cmd_sweep(const RunConfig& config, const std::string& out_dir,
                        const std::string& axis, const std::vector<double>& values,
                        int workers);

} // namespace psys
