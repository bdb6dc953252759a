#include "psys/monitor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "psys/thermo.hpp"

namespace psys {

namespace {

constexpr double kTiny = 1e-300;
const double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Relative margin of lhs <= rhs: positive when satisfied.
inline double rel_margin(double lhs, double rhs) {
    return (rhs - lhs) / std::max({std::abs(lhs), std::abs(rhs), kTiny});
}

struct Acc {
    MonitorCheck c;
    double level_worst = 0.0;
    bool level_any = false;

    void init(const std::string& name, double slack, std::size_t levels) {
        c.name = name;
        c.slack = slack;
        c.worst_margin = std::numeric_limits<double>::infinity();
        c.step_margins.reserve(levels);
    }
    void begin_level() {
        level_worst = std::numeric_limits<double>::infinity();
        level_any = false;
    }
    void add(double margin, double t, double x) {
        level_any = true;
        c.evaluated = true;
        if (margin < level_worst) level_worst = margin;
        if (margin < c.worst_margin) {
            c.worst_margin = margin;
            c.worst_time = t;
            c.worst_x = x;
        }
        if (margin < -c.slack) {
            ++c.violations;
            if (!c.violated) {
                c.violated = true;
                c.first_violation_time = t;
                c.first_violation_x = x;
            }
        }
    }
    void end_level() { c.step_margins.push_back(level_any ? level_worst : kNaN); }
    MonitorCheck take() {
        if (!c.evaluated) {
            c.worst_margin = 0.0;
            c.note = "not applicable on this run (no qualifying sample)";
        }
        return std::move(c);
    }
};

bool beyond_sentinel(const FieldState& st, double sentinel) {
    if (sentinel <= 0.0) return false;
    for (std::size_t i = 0; i < st.y.size(); ++i)
        if (std::abs(st.y[i]) >= sentinel || std::abs(st.q[i]) >= sentinel)
            return true;
    return false;
}

} // namespace

const MonitorCheck* MonitorLog::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

std::vector<std::string> monitor_manifest() {
    return {
        "pressure_sandwich_lower",
        "pressure_sandwich_upper",
        "pressure_le_ch",
        "entropy_weight_bounds",
        "initial_s_bound",
        "initial_r_bound",
        "s_linf_bound",
        "r_linf_bound",
        "tau_lower_bound",
        "density_upper_bound",
        "sound_speed_upper_bound",
        "pressure_upper_bound",
        "y_upper_envelope",
        "q_upper_envelope",
        "a2_inverse_linear_growth",
        "wavespeed_integral_linear_growth",
        "ds_dt_sandwich_lower",
        "ds_dt_sandwich_upper",
    };
}

MonitorLog monitor_run(const PSystem& system, const Trajectory& trajectory,
                       const MonitorInputs& in) {
    const std::size_t levels = trajectory.times.size();
    if (levels == 0) throw ConfigError("monitor_run: empty trajectory");
    if (!(in.tau_min > 0.0))
        throw ConfigError("monitor_run: tau_min must be positive");
    const Grid& grid = trajectory.grid;
    const int n = grid.n_cells;
    const PressureLaw& law = system.law();
    const EntropyProfile& profile = system.profile();

    // indices follow monitor_manifest() order
    enum CheckIndex {
        PSL, PSU, PLE, EWB, IS, IR, SL, RL, TLB, DUB, CUB, PUB,
        YUE, QUE, A2G, WIG, DSL, DSU, NCHECKS
    };
    const auto names = monitor_manifest();
    std::vector<Acc> acc(NCHECKS);
    for (int i = 0; i < NCHECKS; ++i) {
        const double slack =
            (i == DSL || i == DSU) ? in.ds_dt_slack : in.slack;
        acc[i].init(names[i], slack, levels);
    }

    // static per-cell profile data
    std::vector<double> m_vals(n), mpm_vals(n), sigma_vals(n);
    for (int i = 0; i < n; ++i) {
        m_vals[i] = profile.m(grid.center(i));
        mpm_vals[i] = profile.m_prime_over_m(grid.center(i));
        sigma_vals[i] = profile.S_prime(grid.center(i));
    }

    // wavespeed-integral table over the tau range the run actually explored
    double tau_global_lo = std::numeric_limits<double>::infinity();
    double tau_global_hi = 0.0;
    for (const auto& level : trajectory.tau_levels)
        for (double t : level) {
            tau_global_lo = std::min(tau_global_lo, t);
            tau_global_hi = std::max(tau_global_hi, t);
        }
    const double table_hi =
        std::max(tau_global_hi * 1.02, in.tau_min * (1.0 + 1e-6));
    double S_lo = std::numeric_limits<double>::infinity(), S_hi = -S_lo;
    for (int i = 0; i < n; ++i) {
        S_lo = std::min(S_lo, system.S_at(i));
        S_hi = std::max(S_hi, system.S_at(i));
    }
    std::vector<double> table_x;
    if (S_hi - S_lo < 1e-14 * (1.0 + std::abs(S_lo))) {
        table_x = {0.5 * (grid.x_left + grid.x_right)};
    } else {
        const int nx = std::min(129, n);
        for (int j = 0; j < nx; ++j)
            table_x.push_back(grid.x_left +
                              (grid.x_right - grid.x_left) * j / (nx - 1.0));
    }
    const CumulativeTauTable wave_table(
        [&](double xi, double x) {
            return std::pow(-law.p_tau(xi, profile.S(x)), 0.25);
        },
        in.tau_min, table_hi, 400, table_x);

    MonitorLog log;
    log.levels_total = levels;

    const double inv_tau_min = 1.0 / in.tau_min;
    const double k = in.bounds.k;

    for (std::size_t lev = 0; lev < levels; ++lev) {
        const FieldState cur = system.make_state(
            trajectory.tau_levels[lev], trajectory.u_levels[lev],
            trajectory.times[lev]);
        if (beyond_sentinel(cur, in.sentinel)) break;
        const double t = trajectory.times[lev];
        log.times.push_back(t);
        ++log.levels_monitored;
        for (auto& a : acc) a.begin_level();

        for (int i = 0; i < n; ++i) {
            const double x = grid.center(i);
            const double tau = cur.tau[i];
            const double c = cur.c[i];
            const double p = cur.p[i];
            const double h = cur.h[i];
            const double s = cur.s[i];
            const double r = cur.r[i];

            const double half_csr = 0.5 * c * (s - r);
            acc[PSL].add(rel_margin(half_csr / k, p), t, x);
            acc[PSU].add(rel_margin(p, half_csr), t, x);
            acc[PLE].add(rel_margin(p / c, h), t, x);

            const double m = m_vals[i];
            const double m_scale = std::max({m, in.bounds.k_mr, kTiny});
            acc[EWB].add(std::min(m - in.bounds.k_ml, in.bounds.k_mr - m) /
                             m_scale,
                         t, x);

            if (lev == 0) {
                acc[IS].add(rel_margin(std::abs(s), in.bounds.k_s), t, x);
                acc[IR].add(rel_margin(std::abs(r), in.bounds.k_r), t, x);
            }
            acc[SL].add(rel_margin(std::abs(s), in.bounds.n_s), t, x);
            acc[RL].add(rel_margin(std::abs(r), in.bounds.n_r), t, x);
            acc[TLB].add(rel_margin(in.tau_min, tau), t, x);
            acc[DUB].add(rel_margin(1.0 / tau, inv_tau_min), t, x);
            acc[CUB].add(rel_margin(c, in.c_max), t, x);
            acc[PUB].add(rel_margin(p, in.p_max), t, x);
            acc[YUE].add(rel_margin(cur.y[i], in.Y), t, x);
            acc[QUE].add(rel_margin(cur.q[i], in.Q), t, x);

            const double np = c * c;
            const double ptt = law.p_tautau(tau, system.S_at(i));
            const double inv_a2 = 4.0 * std::pow(np, 1.25) / ptt;
            acc[A2G].add(rel_margin(inv_a2, in.growth.k14 * t + in.growth.k15), t,
                         x);

            const double W = wave_table.at(tau, x);
            acc[WIG].add(rel_margin(W, in.growth.k16 * t + in.growth.k17), t, x);

            if (std::abs(mpm_vals[i]) > 1e-14) {
                // For smooth fields the forward-characteristic derivative of s
                // (and the backward one of r) equals -p_S * S'(x) exactly, so
                // the sandwich is re-evaluated pointwise through that identity
                // instead of differencing stored levels.
                const double Ds = -law.p_S(tau, system.S_at(i)) * sigma_vals[i];
                const double b1 = -(p / in.bounds.k1) * mpm_vals[i];
                const double b2 = -(p / in.bounds.k2) * mpm_vals[i];
                const double lo = std::min(b1, b2), hi = std::max(b1, b2);
                const double scale =
                    std::max({std::abs(lo), std::abs(hi), std::abs(Ds), kTiny});
                acc[DSL].add((Ds - lo) / scale, t, x);
                acc[DSU].add((hi - Ds) / scale, t, x);
            }
        }

        for (auto& a : acc) a.end_level();
    }

    log.checks.reserve(NCHECKS);
    for (auto& a : acc) log.checks.push_back(a.take());
    for (const auto& c : log.checks) log.total_violations += c.violations;
    log.all_passed = log.total_violations == 0;
    return log;
}

} // namespace psys
