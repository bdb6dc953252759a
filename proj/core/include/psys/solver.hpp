#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "psys/common.hpp"
#include "psys/entropy_profile.hpp"
#include "psys/pressure_law.hpp"
#include "psys/riccati.hpp"
#include "psys/thermo.hpp"

namespace psys {

enum class Boundary { periodic, outflow };

struct Grid {
    double x_left = 0.0, x_right = 0.0;
    int n_cells = 0;
    Boundary boundary = Boundary::periodic;

    void validate() const;
    double dx() const { return (x_right - x_left) / n_cells; }
    double center(int i) const { return x_left + (i + 0.5) * dx(); }
    std::vector<double> centers() const;
};

/// Cell-averaged state plus the derived per-cell fields. s - r = 2h holds by
/// construction; y, q use centered differences of s, r (one-sided at outflow
/// edges).
struct FieldState {
    double t = 0.0;
    std::vector<double> tau, u;
    std::vector<double> c, p, h, s, r, y, q;
};

/// Abort of a simulation step (vacuum floor breach or non-finite value).
class StepAbort : public Error {
public:
    StepAbort(const std::string& what, double t, double x)
        : Error(what), t_(t), x_(x) {}
    double t() const { return t_; }
    double x() const { return x_; }

private:
    double t_, x_;
};

/// The physical setup a simulation evolves: law + entropy profile + grid, with
/// an optional thermo lattice accelerating h/I lookups.
class PSystem {
public:
    PSystem(const PressureLaw& law, const EntropyProfile& profile, Grid grid,
            const ThermoLattice* lattice = nullptr);

    const Grid& grid() const { return grid_; }
    const PressureLaw& law() const { return law_; }
    const EntropyProfile& profile() const { return profile_; }
    const ThermoLattice* lattice() const { return lattice_; }
    double S_at(int i) const { return S_centers_[i]; }

    /// Builds a state from raw (tau, u) and fills every derived field.
    FieldState make_state(std::vector<double> tau, std::vector<double> u,
                          double t = 0.0) const;
    void refresh_derived(FieldState& state) const;
    double max_wavespeed(const FieldState& state) const;

    /// One conservative update: minmod-limited reconstruction, local
    /// Lax-Friedrichs flux with S evaluated at interfaces, two-stage
    /// second-order time stepping. Throws StepAbort below tau_floor.
    FieldState step_field(const FieldState& state, double dt,
                          double tau_floor = 0.0) const;

private:
    const PressureLaw& law_;
    const EntropyProfile& profile_;
    Grid grid_;
    const ThermoLattice* lattice_;
    std::vector<double> S_centers_;    // S at cell centers
    std::vector<double> S_interfaces_; // S at the n+1 interfaces

    std::vector<double> flux_divergence(const std::vector<double>& tau,
                                        const std::vector<double>& u,
                                        std::vector<double>& dtau_dt,
                                        std::vector<double>& du_dt) const;
};

/// Full time history of a run: every level's (tau, u) plus its time stamp.
/// Characteristic tracing interpolates bilinearly between levels.
struct Trajectory {
    Grid grid;
    std::vector<double> times;
    std::vector<std::vector<double>> tau_levels;
    std::vector<std::vector<double>> u_levels;

    std::size_t levels() const { return times.size(); }
    /// Index of the last level with times[i] <= t (clamped).
    std::size_t level_at(double t) const;
};

enum class RunStatus { ran_to_horizon, blew_up, aborted };
const char* run_status_name(RunStatus s);

struct RunOptions {
    double horizon = 1.0;
    double cfl = 0.4;
    double sentinel_factor = 1e3; // sentinel = factor * max(|y0|, |q0|)
    double tau_floor = 0.0;       // <= 0 selects 1e-4 * min tau0
    double eps = 0.05;            // threshold-criterion epsilon
    long max_steps = 20'000'000;
    bool store_trajectory = true;
};

/// What the run itself measured; threshold/bound context is joined in later
/// by detect_blowup.
struct RunRecord {
    RunStatus status = RunStatus::ran_to_horizon;
    double end_time = 0.0;
    long steps = 0;
    double sentinel = 0.0;
    double tau_floor = 0.0;
    // earliest trigger (field sentinel or path-tracker pole), when any fired:
    bool triggered = false;
    double detected_T = 0.0;
    double detected_T_lo = 0.0, detected_T_hi = 0.0;
    double detected_x = 0.0;
    std::string trigger; // "field-sentinel" | "forward-tracer" | "backward-tracer"
    std::string abort_reason;
    double abort_x = 0.0;
    // initial-gradient statistics:
    double inf_y0 = 0.0, inf_q0 = 0.0;
    double argmin_y0 = 0.0, argmin_q0 = 0.0; // x locations
    double sup_y0 = 0.0, sup_q0 = 0.0;
    double min_tau0 = 0.0, max_tau0 = 0.0;
    double initial_gradient_scale = 0.0; // max(|y0|, |q0|)
};

struct RunResult {
    Trajectory trajectory;
    RunRecord record;
    FieldState final_state;
};

/// Advance until horizon, abort, or blow-up trigger. Two online path trackers
/// (forward from argmin y0, backward from argmin q0) integrate the gradient
/// ODEs alongside the field and detect the pole crossing even when the field's
/// finite differences saturate.
RunResult run(const PSystem& system, const FieldState& initial,
              const RunOptions& options);

struct BlowupReport {
    RunStatus status = RunStatus::ran_to_horizon;
    double N = 0.0, Y = 0.0, Q = 0.0;
    double eps = 0.0;
    double inf_y0 = 0.0, inf_q0 = 0.0;
    double argmin_y0 = 0.0, argmin_q0 = 0.0;
    bool criterion_y = false; // inf_y0 < -(1+eps) N
    bool criterion_q = false;
    double predicted_T_bound = 0.0; // 0 when no criterion triggered
    double detected_T = 0.0;
    double detected_T_lo = 0.0, detected_T_hi = 0.0;
    double detected_x = 0.0;
    std::string trigger;
    std::string abort_reason;
    double sentinel = 0.0;
    double horizon = 0.0;
    long steps = 0;
};

/// Joins the run record with the threshold machinery: evaluates the criterion
/// inf y0 < -(1+eps)N (and the q-side), and when it fires computes the
/// analytic time bound from the growth constants.
BlowupReport detect_blowup(const RunRecord& record, double horizon, double N,
                           double eps, const A2GrowthConstants& growth);

/// Built-in initial-data families evaluated at cell centers:
///   "sech2-pulse" {amplitude, width, center}: u = -a sech^2((x-c)/w), tau = tau_base
///   "sine" {amplitude, wavelength, tau_base}: u = a sin(2 pi x / wavelength)
///   "riemann-smooth" {tau_left, tau_right, u_left, u_right, transition_width}
///   "custom-table" (file parsed separately; see load_initial_table)
struct InitialData {
    std::vector<double> tau, u;
};

InitialData make_initial_data(const Grid& grid, const std::string& family,
                              const std::map<std::string, double>& params);

/// CSV with header x,tau,u; monotone-cubic interpolation onto cell centers.
InitialData load_initial_table(const Grid& grid, const std::string& csv_path);

/// Linear interpolation of cell-centered values at x: periodic wrap or clamped
/// to the edge cells depending on the grid's boundary treatment.
double sample_cell_field(const Grid& grid, const std::vector<double>& vals,
                         double x);

} // namespace psys
