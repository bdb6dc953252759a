#include "psys/characteristic.hpp"

#include <cmath>

#include "psys/riccati.hpp"

namespace psys {

CharacteristicPath trace_characteristic(const PSystem& system,
                                        const Trajectory& trajectory, double x0,
                                        int direction,
                                        const TraceOptions& options) {
    if (direction != 1 && direction != -1)
        throw ConfigError("trace: direction must be +1 or -1");
    const std::size_t levels = trajectory.times.size();
    if (levels < 2) throw ConfigError("trace: trajectory holds fewer than 2 levels");
    const Grid& grid = trajectory.grid;
    if (grid.n_cells != system.grid().n_cells ||
        grid.x_left != system.grid().x_left || grid.x_right != system.grid().x_right)
        throw ConfigError("trace: trajectory grid does not match the system grid");
    if (x0 < grid.x_left || x0 > grid.x_right)
        throw ConfigError("trace: seed x=" + fmt17(x0) + " lies outside [" +
                          fmt17(grid.x_left) + ", " + fmt17(grid.x_right) + "]");

    const PressureLaw& law = system.law();
    const EntropyProfile& profile = system.profile();
    const ThermoLattice* lattice = system.lattice();

    CharacteristicPath path;
    path.direction = direction;

    FieldState cur = system.make_state(trajectory.tau_levels[0],
                                       trajectory.u_levels[0], trajectory.times[0]);

    auto field_gradient = [&](const FieldState& st, double x) {
        return sample_cell_field(grid, direction > 0 ? st.y : st.q, x);
    };

    double x = x0;
    const double v0 =
        options.use_field_seed ? field_gradient(cur, x0) : options.v0;
    QuadraticPathTracker tracker(v0);

    auto record = [&](const FieldState& st, double t_now) {
        const double tau = sample_cell_field(grid, st.tau, x);
        const RiccatiCoefficients rc = coefficients(law, profile, tau, x, lattice);
        path.t.push_back(t_now);
        path.x.push_back(x);
        path.v.push_back(tracker.value());
        path.v_fd.push_back(field_gradient(st, x));
        path.a0.push_back(rc.a0);
        path.a1.push_back(direction > 0 ? rc.a1 : -rc.a1);
        path.a2.push_back(rc.a2);
    };
    record(cur, trajectory.times[0]);

    for (std::size_t k = 0; k + 1 < levels; ++k) {
        FieldState next =
            system.make_state(trajectory.tau_levels[k + 1],
                              trajectory.u_levels[k + 1], trajectory.times[k + 1]);
        const double dt = trajectory.times[k + 1] - trajectory.times[k];
        if (!(dt > 0.0)) throw Error("trace: stored times are not increasing");

        auto tau_at = [&](double xs, double theta) {
            const double t0 = sample_cell_field(grid, cur.tau, xs);
            const double t1 = sample_cell_field(grid, next.tau, xs);
            return t0 + (t1 - t0) * theta;
        };
        bool bad_stage = false;
        auto stage = [&](double xs, double theta, double& cx,
                         QuadraticPathTracker::Coeffs& cf) {
            const double tau = tau_at(xs, theta);
            if (!(tau > 0.0)) {
                bad_stage = true;
                return;
            }
            const RiccatiCoefficients rc =
                coefficients(law, profile, tau, xs, lattice);
            cx = direction * std::sqrt(-law.p_tau(tau, profile.S(xs)));
            cf = {rc.a0, direction > 0 ? rc.a1 : -rc.a1, -rc.a2};
        };

        double c1 = 0, c2 = 0, c3 = 0, c4 = 0;
        QuadraticPathTracker::Coeffs f1, f2, f3, f4;
        stage(x, 0.0, c1, f1);
        if (!bad_stage) stage(x + 0.5 * dt * c1, 0.5, c2, f2);
        if (!bad_stage) stage(x + 0.5 * dt * c2, 0.5, c3, f3);
        if (!bad_stage) stage(x + dt * c3, 1.0, c4, f4);
        if (bad_stage) {
            path.truncated = true;
            break;
        }

        const double x_next = x + dt / 6.0 * (c1 + 2.0 * c2 + 2.0 * c3 + c4);
        tracker.step(trajectory.times[k], dt, f1, f2, f3, f4);
        x = x_next;
        if (grid.boundary == Boundary::periodic) {
            const double width = grid.x_right - grid.x_left;
            x = grid.x_left + std::fmod(x - grid.x_left, width);
            if (x < grid.x_left) x += width;
        } else if (x < grid.x_left || x > grid.x_right) {
            path.truncated = true;
            break;
        }

        if (tracker.blown_up()) {
            path.blew_up = true;
            path.blowup_t = tracker.blowup_time();
            break;
        }
        record(next, trajectory.times[k + 1]);
        cur = std::move(next);
    }
    return path;
}

} // namespace psys
