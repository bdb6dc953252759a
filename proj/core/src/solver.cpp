#include "psys/solver.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "psys/interp.hpp"

namespace psys {

void Grid::validate() const {
    if (n_cells < 16)
        throw ConfigError("grid: need at least 16 cells, got " +
                          std::to_string(n_cells));
    if (!(x_right > x_left))
        throw ConfigError("grid: x_right must exceed x_left");
}

std::vector<double> Grid::centers() const {
    std::vector<double> xs(n_cells);
    for (int i = 0; i < n_cells; ++i) xs[i] = center(i);
    return xs;
}

const char* run_status_name(RunStatus s) {
    switch (s) {
        case RunStatus::ran_to_horizon: return "ran-to-horizon";
        case RunStatus::blew_up: return "blew-up";
        case RunStatus::aborted: return "aborted";
    }
    return "unknown";
}

std::size_t Trajectory::level_at(double t) const {
    if (times.empty()) throw Error("trajectory is empty");
    auto it = std::upper_bound(times.begin(), times.end(), t);
    if (it == times.begin()) return 0;
    return static_cast<std::size_t>(it - times.begin()) - 1;
}

PSystem::PSystem(const PressureLaw& law, const EntropyProfile& profile, Grid grid,
                 const ThermoLattice* lattice)
    : law_(law), profile_(profile), grid_(grid), lattice_(lattice) {
    grid_.validate();
    S_centers_.resize(grid_.n_cells);
    for (int i = 0; i < grid_.n_cells; ++i) S_centers_[i] = profile.S(grid_.center(i));
    S_interfaces_.resize(grid_.n_cells + 1);
    for (int i = 0; i <= grid_.n_cells; ++i)
        S_interfaces_[i] = profile.S(grid_.x_left + i * grid_.dx());
}

FieldState PSystem::make_state(std::vector<double> tau, std::vector<double> u,
                               double t) const {
    if (static_cast<int>(tau.size()) != grid_.n_cells ||
        static_cast<int>(u.size()) != grid_.n_cells)
        throw DomainError("state arrays must match the grid cell count");
    FieldState state;
    state.t = t;
    state.tau = std::move(tau);
    state.u = std::move(u);
    refresh_derived(state);
    return state;
}

void PSystem::refresh_derived(FieldState& state) const {
    const int n = grid_.n_cells;
    state.c.resize(n);
    state.p.resize(n);
    state.h.resize(n);
    state.s.resize(n);
    state.r.resize(n);
    state.y.resize(n);
    state.q.resize(n);

    for (int i = 0; i < n; ++i) {
        const double tau = state.tau[i];
        const double S = S_centers_[i];
        const double np = -law_.p_tau(tau, S);
        if (!(np > 0.0))
            throw DomainError("derived fields: p_tau must be negative at x=" +
                              fmt17(grid_.center(i)) + ", tau=" + fmt17(tau));
        state.c[i] = std::sqrt(np);
        state.p[i] = law_.p(tau, S);
        state.h[i] = lattice_ ? lattice_->h_at(tau, grid_.center(i))
                              : compute_h(law_, tau, S);
        state.s[i] = state.u[i] + state.h[i];
        state.r[i] = state.u[i] - state.h[i];
    }

    const double dx = grid_.dx();
    auto ds_dx = [&](const std::vector<double>& f, int i) {
        if (grid_.boundary == Boundary::periodic) {
            const int ip = i + 1 == n ? 0 : i + 1;
            const int im = i == 0 ? n - 1 : i - 1;
            return (f[ip] - f[im]) / (2.0 * dx);
        }
        if (i == 0) return (f[1] - f[0]) / dx;
        if (i == n - 1) return (f[n - 1] - f[n - 2]) / dx;
        return (f[i + 1] - f[i - 1]) / (2.0 * dx);
    };

    for (int i = 0; i < n; ++i) {
        const double x = grid_.center(i);
        const double S = S_centers_[i];
        const double sigma = profile_.S_prime(x);
        const double sqrt_c = std::sqrt(state.c[i]);
        const double pm = p_mu(law_, state.tau[i], S, sigma);
        const double I = lattice_ ? lattice_->I_at(state.tau[i], x)
                                  : compute_I(law_, state.tau[i], S, sigma);
        state.y[i] = sqrt_c * ds_dx(state.s, i) + pm / sqrt_c - I;
        state.q[i] = sqrt_c * ds_dx(state.r, i) - pm / sqrt_c + I;
    }
}

double PSystem::max_wavespeed(const FieldState& state) const {
    double cmax = 0.0;
    for (double c : state.c) cmax = std::max(cmax, c);
    return cmax;
}

namespace {

inline double minmod(double a, double b) {
    if (a > 0.0 && b > 0.0) return std::min(a, b);
    if (a < 0.0 && b < 0.0) return std::max(a, b);
    return 0.0;
}

} // namespace

std::vector<double> PSystem::flux_divergence(const std::vector<double>& tau,
                                             const std::vector<double>& u,
                                             std::vector<double>& dtau_dt,
                                             std::vector<double>& du_dt) const {
    const int n = grid_.n_cells;
    const double dx = grid_.dx();

    // extended index e = i + 2 covers cells -2 .. n+1
    const int ne = n + 4;
    std::vector<double> et(ne), eu(ne);
    for (int i = 0; i < n; ++i) {
        et[i + 2] = tau[i];
        eu[i + 2] = u[i];
    }
    if (grid_.boundary == Boundary::periodic) {
        et[0] = tau[n - 2];
        et[1] = tau[n - 1];
        et[n + 2] = tau[0];
        et[n + 3] = tau[1];
        eu[0] = u[n - 2];
        eu[1] = u[n - 1];
        eu[n + 2] = u[0];
        eu[n + 3] = u[1];
    } else {
        et[0] = et[1] = tau[0];
        et[n + 2] = et[n + 3] = tau[n - 1];
        eu[0] = eu[1] = u[0];
        eu[n + 2] = eu[n + 3] = u[n - 1];
    }

    std::vector<double> st(ne, 0.0), su(ne, 0.0); // minmod slopes
    for (int e = 1; e + 1 < ne; ++e) {
        st[e] = minmod(et[e] - et[e - 1], et[e + 1] - et[e]);
        su[e] = minmod(eu[e] - eu[e - 1], eu[e + 1] - eu[e]);
    }

    std::vector<double> ftau(n + 1), fu(n + 1);
    for (int j = 0; j <= n; ++j) {
        const int eL = j + 1, eR = j + 2; // cells j-1 | j
        const double tauL = et[eL] + 0.5 * st[eL];
        const double tauR = et[eR] - 0.5 * st[eR];
        const double uL = eu[eL] + 0.5 * su[eL];
        const double uR = eu[eR] - 0.5 * su[eR];
        const double S = S_interfaces_[j];
        if (!(tauL > 0.0) || !(tauR > 0.0))
            throw StepAbort("reconstructed specific volume is non-positive at x=" +
                                fmt17(grid_.x_left + j * dx),
                            0.0, grid_.x_left + j * dx);
        const double npL = -law_.p_tau(tauL, S);
        const double npR = -law_.p_tau(tauR, S);
        if (!(npL > 0.0) || !(npR > 0.0))
            throw StepAbort("wave speed undefined at interface x=" +
                                fmt17(grid_.x_left + j * dx),
                            0.0, grid_.x_left + j * dx);
        const double a = std::max(std::sqrt(npL), std::sqrt(npR));
        ftau[j] = 0.5 * (-uL - uR) - 0.5 * a * (tauR - tauL);
        fu[j] = 0.5 * (law_.p(tauL, S) + law_.p(tauR, S)) - 0.5 * a * (uR - uL);
    }

    dtau_dt.resize(n);
    du_dt.resize(n);
    for (int i = 0; i < n; ++i) {
        dtau_dt[i] = -(ftau[i + 1] - ftau[i]) / dx;
        du_dt[i] = -(fu[i + 1] - fu[i]) / dx;
    }
    return {};
}

FieldState PSystem::step_field(const FieldState& state, double dt,
                               double tau_floor) const {
    const int n = grid_.n_cells;
    if (!(dt > 0.0)) throw DomainError("step_field: dt must be positive");

    auto check = [&](const std::vector<double>& tau, const std::vector<double>& u,
                     double t) {
        for (int i = 0; i < n; ++i) {
            if (!std::isfinite(tau[i]) || !std::isfinite(u[i]))
                throw StepAbort("non-finite state at x=" + fmt17(grid_.center(i)) +
                                    ", t=" + fmt17(t),
                                t, grid_.center(i));
            if (tau_floor > 0.0 && tau[i] < tau_floor)
                throw StepAbort("specific volume " + fmt17(tau[i]) +
                                    " fell below the floor " + fmt17(tau_floor) +
                                    " at x=" + fmt17(grid_.center(i)) +
                                    ", t=" + fmt17(t),
                                t, grid_.center(i));
        }
    };

    std::vector<double> dtau(n), du(n);
    flux_divergence(state.tau, state.u, dtau, du);
    std::vector<double> tau1(n), u1(n);
    for (int i = 0; i < n; ++i) {
        tau1[i] = state.tau[i] + dt * dtau[i];
        u1[i] = state.u[i] + dt * du[i];
    }
    check(tau1, u1, state.t + dt);

    flux_divergence(tau1, u1, dtau, du);
    std::vector<double> tau2(n), u2(n);
    for (int i = 0; i < n; ++i) {
        tau2[i] = 0.5 * (state.tau[i] + tau1[i] + dt * dtau[i]);
        u2[i] = 0.5 * (state.u[i] + u1[i] + dt * du[i]);
    }
    check(tau2, u2, state.t + dt);

    FieldState next;
    next.t = state.t + dt;
    next.tau = std::move(tau2);
    next.u = std::move(u2);
    refresh_derived(next);
    return next;
}

// -- field sampling for path tracing -----------------------------------------

double sample_cell_field(const Grid& grid, const std::vector<double>& vals,
                         double x) {
    const int n = grid.n_cells;
    const double dx = grid.dx();
    double rel = (x - grid.x_left) / dx - 0.5; // in cell-index units
    if (grid.boundary == Boundary::periodic) {
        rel = std::fmod(rel, static_cast<double>(n));
        if (rel < 0.0) rel += n;
        const int i0 = static_cast<int>(rel) % n;
        const int i1 = (i0 + 1) % n;
        const double w = rel - std::floor(rel);
        return vals[i0] + (vals[i1] - vals[i0]) * w;
    }
    if (rel <= 0.0) return vals.front();
    if (rel >= n - 1) return vals.back();
    const int i0 = static_cast<int>(rel);
    const double w = rel - i0;
    return vals[i0] + (vals[i0 + 1] - vals[i0]) * w;
}

namespace {

/// Online tracer advancing x' = dir * c and the gradient ODE between two
/// adjacent stored levels.
struct OnlineTracer {
    int direction;             // +1: forward / y,  -1: backward / q
    double x;
    QuadraticPathTracker path;
    bool active = true;
    bool fired = false;
    double fire_t = 0.0;
    double fire_x = 0.0;

    OnlineTracer(int dir, double x0, double v0) : direction(dir), x(x0), path(v0) {}
};

} // namespace

RunResult run(const PSystem& system, const FieldState& initial,
              const RunOptions& options) {
    const Grid& grid = system.grid();
    const int n = grid.n_cells;
    if (!(options.horizon > 0.0)) throw ConfigError("run: horizon must be positive");
    if (!(options.cfl > 0.0 && options.cfl < 1.0))
        throw ConfigError("run: cfl must lie in (0, 1)");

    RunResult result;
    RunRecord& rec = result.record;

    // initial statistics
    const auto [min_y_it, max_y_it] =
        std::minmax_element(initial.y.begin(), initial.y.end());
    const auto [min_q_it, max_q_it] =
        std::minmax_element(initial.q.begin(), initial.q.end());
    rec.inf_y0 = *min_y_it;
    rec.sup_y0 = *max_y_it;
    rec.inf_q0 = *min_q_it;
    rec.sup_q0 = *max_q_it;
    rec.argmin_y0 = grid.center(static_cast<int>(min_y_it - initial.y.begin()));
    rec.argmin_q0 = grid.center(static_cast<int>(min_q_it - initial.q.begin()));
    const auto [min_tau_it, max_tau_it] =
        std::minmax_element(initial.tau.begin(), initial.tau.end());
    rec.min_tau0 = *min_tau_it;
    rec.max_tau0 = *max_tau_it;
    rec.initial_gradient_scale =
        std::max({std::abs(rec.inf_y0), std::abs(rec.sup_y0), std::abs(rec.inf_q0),
                  std::abs(rec.sup_q0)});
    rec.sentinel =
        options.sentinel_factor * std::max(rec.initial_gradient_scale, 1e-12);
    rec.tau_floor =
        options.tau_floor > 0.0 ? options.tau_floor : 1e-4 * rec.min_tau0;

    const PressureLaw& law = system.law();
    const EntropyProfile& profile = system.profile();
    const ThermoLattice* lattice = system.lattice();

    // gradient-ODE tracers seeded at the most compressive initial cells
    std::vector<OnlineTracer> tracers;
    tracers.emplace_back(+1, rec.argmin_y0, rec.inf_y0);
    tracers.emplace_back(-1, rec.argmin_q0, rec.inf_q0);

    FieldState state = initial;
    if (options.store_trajectory) {
        result.trajectory.grid = grid;
        result.trajectory.times.push_back(state.t);
        result.trajectory.tau_levels.push_back(state.tau);
        result.trajectory.u_levels.push_back(state.u);
    }

    const double t_end = initial.t + options.horizon;
    bool sentinel_fired = false;
    double sentinel_t = 0.0, sentinel_t_lo = 0.0, sentinel_x = 0.0;

    while (state.t < t_end * (1.0 - 1e-14)) {
        if (rec.steps >= options.max_steps) {
            rec.status = RunStatus::aborted;
            rec.abort_reason = "maximum step count exceeded";
            break;
        }
        const double cmax = system.max_wavespeed(state);
        double dt = options.cfl * grid.dx() / std::max(cmax, 1e-300);
        dt = std::min(dt, t_end - state.t);
        if (!(dt > 0.0)) break;

        FieldState next;
        try {
            next = system.step_field(state, dt, rec.tau_floor);
        } catch (const StepAbort& e) {
            rec.status = RunStatus::aborted;
            rec.abort_reason = e.what();
            rec.abort_x = e.x();
            break;
        }

        // advance the online tracers across [state.t, next.t]
        auto tau_at = [&](double x, double theta) {
            const double t0 = sample_cell_field(grid, state.tau, x);
            const double t1 = sample_cell_field(grid, next.tau, x);
            return t0 + (t1 - t0) * theta;
        };
        for (auto& tr : tracers) {
            if (!tr.active || tr.fired) continue;
            auto stage = [&](double x, double theta, double& cx,
                             QuadraticPathTracker::Coeffs& cf) {
                const double tau = tau_at(x, theta);
                if (!(tau > 0.0)) {
                    tr.active = false;
                    return false;
                }
                const RiccatiCoefficients rc =
                    coefficients(law, profile, tau, x, lattice);
                cx = tr.direction * std::sqrt(-law.p_tau(tau, profile.S(x)));
                cf = {rc.a0, tr.direction > 0 ? rc.a1 : -rc.a1, -rc.a2};
                return true;
            };
            double c1, c2, c3, c4;
            QuadraticPathTracker::Coeffs f1, f2, f3, f4;
            if (!stage(tr.x, 0.0, c1, f1)) continue;
            if (!stage(tr.x + 0.5 * dt * c1, 0.5, c2, f2)) continue;
            if (!stage(tr.x + 0.5 * dt * c2, 0.5, c3, f3)) continue;
            if (!stage(tr.x + dt * c3, 1.0, c4, f4)) continue;

            // path ODE is decoupled from the gradient value: advance x by the
            // classical four-stage rule, then the gradient with the stage
            // coefficients just gathered
            const double x_next = tr.x + dt / 6.0 * (c1 + 2.0 * c2 + 2.0 * c3 + c4);
            tr.path.step(state.t, dt, f1, f2, f3, f4);
            tr.x = x_next;
            if (grid.boundary == Boundary::periodic) {
                const double width = grid.x_right - grid.x_left;
                tr.x = grid.x_left + std::fmod(tr.x - grid.x_left, width);
                if (tr.x < grid.x_left) tr.x += width;
            } else if (tr.x < grid.x_left || tr.x > grid.x_right) {
                tr.active = false;
            }
            if (tr.path.blown_up()) {
                tr.fired = true;
                tr.fire_t = tr.path.blowup_time();
                tr.fire_x = tr.x;
            }
        }

        // field sentinel on the freshly derived gradients
        if (!sentinel_fired) {
            for (int i = 0; i < n; ++i) {
                if (std::abs(next.y[i]) >= rec.sentinel ||
                    std::abs(next.q[i]) >= rec.sentinel) {
                    sentinel_fired = true;
                    sentinel_t = next.t;
                    sentinel_t_lo = state.t;
                    sentinel_x = grid.center(i);
                    break;
                }
            }
        }

        state = std::move(next);
        ++rec.steps;
        if (options.store_trajectory) {
            result.trajectory.times.push_back(state.t);
            result.trajectory.tau_levels.push_back(state.tau);
            result.trajectory.u_levels.push_back(state.u);
        }

        // earliest trigger wins
        const OnlineTracer* fired_tracer = nullptr;
        for (const auto& tr : tracers)
            if (tr.fired && (!fired_tracer || tr.fire_t < fired_tracer->fire_t))
                fired_tracer = &tr;
        if (fired_tracer || sentinel_fired) {
            rec.status = RunStatus::blew_up;
            rec.triggered = true;
            if (fired_tracer &&
                (!sentinel_fired || fired_tracer->fire_t <= sentinel_t)) {
                rec.detected_T = fired_tracer->fire_t;
                rec.detected_T_lo = std::max(0.0, fired_tracer->fire_t - dt);
                rec.detected_T_hi = fired_tracer->fire_t + dt;
                rec.detected_x = fired_tracer->fire_x;
                rec.trigger = fired_tracer->direction > 0 ? "forward-tracer"
                                                          : "backward-tracer";
            } else {
                rec.detected_T = sentinel_t;
                rec.detected_T_lo = sentinel_t_lo;
                rec.detected_T_hi = sentinel_t;
                rec.detected_x = sentinel_x;
                rec.trigger = "field-sentinel";
            }
            break;
        }
    }

    rec.end_time = state.t;
    if (rec.status == RunStatus::ran_to_horizon && rec.steps >= options.max_steps &&
        state.t < t_end * (1.0 - 1e-14)) {
        rec.status = RunStatus::aborted;
        if (rec.abort_reason.empty()) rec.abort_reason = "maximum step count exceeded";
    }
    result.final_state = std::move(state);
    return result;
}

BlowupReport detect_blowup(const RunRecord& record, double horizon, double N,
                           double eps, const A2GrowthConstants& growth) {
    BlowupReport rep;
    rep.status = record.status;
    rep.N = N;
    rep.eps = eps;
    rep.inf_y0 = record.inf_y0;
    rep.inf_q0 = record.inf_q0;
    rep.argmin_y0 = record.argmin_y0;
    rep.argmin_q0 = record.argmin_q0;
    rep.criterion_y = record.inf_y0 < -(1.0 + eps) * N;
    rep.criterion_q = record.inf_q0 < -(1.0 + eps) * N;
    rep.detected_T = record.detected_T;
    rep.detected_T_lo = record.detected_T_lo;
    rep.detected_T_hi = record.detected_T_hi;
    rep.detected_x = record.detected_x;
    rep.trigger = record.trigger;
    rep.abort_reason = record.abort_reason;
    rep.sentinel = record.sentinel;
    rep.horizon = horizon;
    rep.steps = record.steps;

    double bound = 0.0;
    if (rep.criterion_y)
        bound = blowup_time_bound(record.inf_y0, eps, growth.k14, growth.k15);
    if (rep.criterion_q) {
        const double qb =
            blowup_time_bound(record.inf_q0, eps, growth.k14, growth.k15);
        bound = rep.criterion_y ? std::min(bound, qb) : qb;
    }
    rep.predicted_T_bound = bound;
    return rep;
}

// -- initial data -------------------------------------------------------------

namespace {

double need(const std::map<std::string, double>& params, const std::string& key,
            const std::string& family) {
    auto it = params.find(key);
    if (it == params.end())
        throw ConfigError("initial data '" + family + "': missing parameter '" + key +
                          "'");
    return it->second;
}

double pick(const std::map<std::string, double>& params, const std::string& key,
            double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

} // namespace

InitialData make_initial_data(const Grid& grid, const std::string& family,
                              const std::map<std::string, double>& params) {
    InitialData data;
    data.tau.resize(grid.n_cells);
    data.u.resize(grid.n_cells);

    if (family == "sech2-pulse") {
        const double a = need(params, "amplitude", family);
        const double w = need(params, "width", family);
        const double x0 = pick(params, "center", 0.0);
        const double tau_base = pick(params, "tau_base", 1.0);
        if (!(w > 0.0)) throw ConfigError("sech2-pulse: width must be positive");
        if (!(tau_base > 0.0))
            throw ConfigError("sech2-pulse: tau_base must be positive");
        for (int i = 0; i < grid.n_cells; ++i) {
            const double z = (grid.center(i) - x0) / w;
            const double sech = 1.0 / std::cosh(z);
            data.tau[i] = tau_base;
            data.u[i] = -a * sech * sech;
        }
        return data;
    }
    if (family == "sine") {
        const double a = need(params, "amplitude", family);
        const double wavelength = need(params, "wavelength", family);
        const double tau_base = pick(params, "tau_base", 1.0);
        if (!(wavelength > 0.0)) throw ConfigError("sine: wavelength must be positive");
        if (!(tau_base > 0.0)) throw ConfigError("sine: tau_base must be positive");
        for (int i = 0; i < grid.n_cells; ++i) {
            data.tau[i] = tau_base;
            data.u[i] = a * std::sin(2.0 * M_PI * grid.center(i) / wavelength);
        }
        return data;
    }
    if (family == "riemann-smooth") {
        const double tau_l = need(params, "tau_left", family);
        const double tau_r = need(params, "tau_right", family);
        const double u_l = need(params, "u_left", family);
        const double u_r = need(params, "u_right", family);
        const double w = need(params, "transition_width", family);
        const double x0 = pick(params, "center", 0.0);
        if (!(w > 0.0))
            throw ConfigError("riemann-smooth: transition_width must be positive");
        if (!(tau_l > 0.0 && tau_r > 0.0))
            throw ConfigError("riemann-smooth: tau states must be positive");
        for (int i = 0; i < grid.n_cells; ++i) {
            const double blend = 0.5 * (1.0 + std::tanh((grid.center(i) - x0) / w));
            data.tau[i] = tau_l + (tau_r - tau_l) * blend;
            data.u[i] = u_l + (u_r - u_l) * blend;
        }
        return data;
    }
    throw ConfigError("unknown initial data family '" + family +
                      "' (expected sech2-pulse, sine, riemann-smooth or "
                      "custom-table)");
}

InitialData load_initial_table(const Grid& grid, const std::string& csv_path) {
    std::ifstream in(csv_path);
    if (!in) throw ConfigError("custom-table: cannot open '" + csv_path + "'");
    std::string line;
    if (!std::getline(in, line))
        throw ConfigError("custom-table: '" + csv_path + "' is empty");
    // tolerate an optional header row
    std::vector<double> xs, taus, us;
    auto parse_row = [&](const std::string& row) {
        std::istringstream ss(row);
        std::string cell;
        double vals[3];
        for (int k = 0; k < 3; ++k) {
            if (!std::getline(ss, cell, ','))
                throw ConfigError("custom-table: expected 3 columns x,tau,u in '" +
                                  row + "'");
            vals[k] = std::stod(cell);
        }
        xs.push_back(vals[0]);
        taus.push_back(vals[1]);
        us.push_back(vals[2]);
    };
    try {
        parse_row(line);
    } catch (...) {
        // header row; skip
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        parse_row(line);
    }
    if (xs.size() < 2) throw ConfigError("custom-table: need at least 2 rows");
    if (!std::is_sorted(xs.begin(), xs.end()))
        throw ConfigError("custom-table: x column must be strictly increasing");

    const MonotoneCubic tau_interp(xs, taus);
    const MonotoneCubic u_interp(xs, us);
    InitialData data;
    data.tau.resize(grid.n_cells);
    data.u.resize(grid.n_cells);
    for (int i = 0; i < grid.n_cells; ++i) {
        const double x = grid.center(i);
        data.tau[i] = tau_interp(x);
        data.u[i] = u_interp(x);
        if (!(data.tau[i] > 0.0))
            throw ConfigError("custom-table: interpolated tau is non-positive at x=" +
                              fmt17(x));
    }
    return data;
}

} // namespace psys
