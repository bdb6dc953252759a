#include "psys/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "psys/characteristic.hpp"

namespace fs = std::filesystem;

namespace psys {

namespace {

std::vector<double> uniform_points(double a, double b, int n) {
    std::vector<double> xs(static_cast<std::size_t>(std::max(n, 1)));
    if (n <= 1) {
        xs[0] = 0.5 * (a + b);
        return xs;
    }
    for (int i = 0; i < n; ++i) xs[i] = a + (b - a) * i / (n - 1.0);
    return xs;
}

const double kNaN = std::numeric_limits<double>::quiet_NaN();

} // namespace

SimulationArtifacts run_simulation(const RunConfig& cfg) {
    SimulationArtifacts art;
    art.law = make_law(cfg);
    art.profile = make_profile(cfg, *art.law);
    const PressureLaw& law = *art.law;
    const EntropyProfile& profile = *art.profile;

    Grid grid = cfg.grid;
    grid.validate();

    if (cfg.initial_family == "custom-table") {
        if (cfg.initial_file.empty())
            throw ConfigError(
                "initial.family = custom-table requires initial.file");
        art.initial = load_initial_table(grid, cfg.initial_file);
    } else {
        art.initial =
            make_initial_data(grid, cfg.initial_family, cfg.initial_params);
    }

    double tau0_min = std::numeric_limits<double>::infinity(), tau0_max = 0.0;
    for (double t : art.initial.tau) {
        tau0_min = std::min(tau0_min, t);
        tau0_max = std::max(tau0_max, t);
    }
    if (!(tau0_min > 0.0))
        throw ConfigError("initial data contains non-positive specific volume");

    // initial weighted-invariant bounds (closed-form / quadrature h path)
    double sup_s = 0.0, sup_r = 0.0;
    for (int i = 0; i < grid.n_cells; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        const double S = profile.S(grid.center(i));
        const double h = compute_h(law, art.initial.tau[idx], S);
        sup_s = std::max(sup_s, std::abs(art.initial.u[idx] + h));
        sup_r = std::max(sup_r, std::abs(art.initial.u[idx] - h));
    }
    art.k_s = 1.01 * sup_s;
    art.k_r = 1.01 * sup_r;

    // entropy-weight range, variation and the constant cascade
    const auto [m_lo, m_hi] = profile.weight_range(grid.x_left, grid.x_right);
    const double k_ml = m_lo * (1.0 - 1e-9);
    const double k_mr = m_hi * (1.0 + 1e-9);
    const double V = profile.total_variation(grid.x_left, grid.x_right);
    art.segments_extrapolated =
        profile.monotone_segments(grid.x_left, grid.x_right).size() > 3;
    const DeclaredConstants& dc = law.constants();
    art.bounds =
        bound_constants(dc.k, dc.k1, dc.k2, k_ml, k_mr, art.k_s, art.k_r, V);

    // tau_min / c_max / p_max over sampled positions
    const double h_max = 0.5 * (art.bounds.n_s + art.bounds.n_r);
    const int nx_samples = std::min(65, grid.n_cells);
    const auto xs = uniform_points(grid.x_left, grid.x_right, nx_samples);
    bool first = true;
    for (double x : xs) {
        TauMinResult r = tau_min_bound(law, h_max, profile.S(x));
        if (first || r.tau_min < art.tau_min.tau_min) {
            art.tau_min = r;
            first = false;
        }
    }
    double c_max = 0.0;
    for (double x : xs)
        c_max = std::max(
            c_max, std::sqrt(-law.p_tau(art.tau_min.tau_min, profile.S(x))));
    art.tau_min.c_max = c_max;
    art.tau_min.p_max = c_max * h_max;
    art.tau_min.h_max = h_max;

    // thermo lattice covering the reachable box
    const double lat_lo =
        cfg.lattice_tau_lo > 0.0
            ? cfg.lattice_tau_lo
            : std::min(art.tau_min.tau_min * 0.5, tau0_min * 0.25);
    const double lat_hi = cfg.lattice_tau_hi > 0.0
                              ? cfg.lattice_tau_hi
                              : std::max(tau0_max * 8.0, 2.0);
    if (!(lat_lo > 0.0 && lat_hi > lat_lo))
        throw ConfigError("lattice tau range is degenerate: [" + fmt17(lat_lo) +
                          ", " + fmt17(lat_hi) + "]");
    art.lattice = std::make_unique<ThermoLattice>(
        law, profile, lat_lo, lat_hi, cfg.lattice_n_tau,
        uniform_points(grid.x_left, grid.x_right, cfg.lattice_n_x));
    art.system =
        std::make_unique<PSystem>(law, profile, grid, art.lattice.get());
    FieldState init = art.system->make_state(art.initial.tau, art.initial.u, 0.0);

    // root-magnitude threshold over the reachable box
    StateBox nbox;
    nbox.tau_lo =
        cfg.raw.has("box.tau_lo") ? cfg.box.tau_lo : art.tau_min.tau_min;
    nbox.tau_hi = cfg.raw.has("box.tau_hi") ? cfg.box.tau_hi
                                            : std::max(tau0_max * 4.0, 1.0);
    nbox.x_lo = grid.x_left;
    nbox.x_hi = grid.x_right;
    art.threshold =
        estimate_N(law, profile, nbox, cfg.box_samples, art.lattice.get(),
                   std::make_pair(tau0_min, tau0_max));

    art.env = envelopes(art.threshold.N, init.y, init.q);

    // growth constants sampled at (a subset of) cell centers
    std::vector<double> gx, gtau0;
    const int stride = std::max(1, grid.n_cells / 256);
    for (int i = 0; i < grid.n_cells; i += stride) {
        gx.push_back(grid.center(i));
        gtau0.push_back(art.initial.tau[static_cast<std::size_t>(i)]);
    }
    if ((grid.n_cells - 1) % stride != 0) {
        gx.push_back(grid.center(grid.n_cells - 1));
        gtau0.push_back(
            art.initial.tau[static_cast<std::size_t>(grid.n_cells - 1)]);
    }
    art.growth = a2_growth_constants(law, profile, gx, gtau0,
                                     art.tau_min.tau_min, art.env.Y, art.env.Q);

    RunOptions opt;
    opt.horizon = cfg.horizon_time;
    opt.cfl = cfg.cfl;
    opt.sentinel_factor = cfg.sentinel_factor;
    opt.tau_floor = cfg.tau_floor;
    opt.eps = cfg.eps;
    opt.max_steps = cfg.max_steps;
    opt.store_trajectory = cfg.store_trajectory;
    art.run_result = run(*art.system, init, opt);

    art.blowup = detect_blowup(art.run_result.record, cfg.horizon_time,
                               art.threshold.N, cfg.eps, art.growth);

    if (cfg.store_trajectory) {
        MonitorInputs mi;
        mi.bounds = art.bounds;
        mi.tau_min = art.tau_min.tau_min;
        mi.c_max = art.tau_min.c_max;
        mi.p_max = art.tau_min.p_max;
        mi.Y = art.env.Y;
        mi.Q = art.env.Q;
        mi.growth = art.growth;
        mi.sentinel = art.run_result.record.sentinel;
        art.monitors = monitor_run(*art.system, art.run_result.trajectory, mi);
    }
    return art;
}

namespace {

Json condition_json(const ConditionRecord& c) {
    Json j = Json::object();
    j["id"] = c.id;
    j["name"] = c.name;
    j["verdict"] = verdict_name(c.verdict);
    j["margin"] = c.margin;
    j["witness_tau"] = c.witness_tau;
    j["witness_axis"] = c.witness_axis;
    j["box"] = {{"tau_lo", c.box.tau_lo},
                {"tau_hi", c.box.tau_hi},
                {"axis_lo", c.box.x_lo},
                {"axis_hi", c.box.x_hi}};
    if (!c.stats.empty()) {
        Json stats = Json::object();
        for (const auto& [key, value] : c.stats) stats[key] = value;
        j["stats"] = std::move(stats);
    }
    if (!c.note.empty()) j["note"] = c.note;
    return j;
}

Json monitor_check_json(const MonitorCheck& c) {
    Json j = Json::object();
    j["name"] = c.name;
    j["slack"] = c.slack;
    j["worst_margin"] = c.worst_margin;
    j["worst_time"] = c.worst_time;
    j["worst_x"] = c.worst_x;
    j["violations"] = c.violations;
    j["evaluated"] = c.evaluated;
    if (c.violated) {
        j["first_violation_time"] = c.first_violation_time;
        j["first_violation_x"] = c.first_violation_x;
    }
    if (!c.note.empty()) j["note"] = c.note;
    return j;
}

} // namespace

Json report_json(const RunConfig& cfg, const SimulationArtifacts& art) {
    const RunRecord& rec = art.run_result.record;
    Json root = Json::object();
    root["schema"] = "psys-run-report-1";

    Json run = Json::object();
    run["status"] = run_status_name(rec.status);
    run["end_time"] = rec.end_time;
    run["steps"] = rec.steps;
    run["sentinel"] = rec.sentinel;
    run["tau_floor"] = rec.tau_floor;
    run["triggered"] = rec.triggered;
    if (rec.triggered) {
        run["detected_T"] = rec.detected_T;
        run["detected_T_lo"] = rec.detected_T_lo;
        run["detected_T_hi"] = rec.detected_T_hi;
        run["detected_x"] = rec.detected_x;
        run["trigger"] = rec.trigger;
    }
    if (!rec.abort_reason.empty()) {
        run["abort_reason"] = rec.abort_reason;
        run["abort_x"] = rec.abort_x;
    }
    run["inf_y0"] = rec.inf_y0;
    run["inf_q0"] = rec.inf_q0;
    run["argmin_y0"] = rec.argmin_y0;
    run["argmin_q0"] = rec.argmin_q0;
    run["sup_y0"] = rec.sup_y0;
    run["sup_q0"] = rec.sup_q0;
    run["min_tau0"] = rec.min_tau0;
    run["max_tau0"] = rec.max_tau0;
    root["run"] = std::move(run);

    Json thr = Json::object();
    thr["N"] = art.threshold.N;
    thr["N_raw"] = art.threshold.N_raw;
    thr["safety_factor"] = art.threshold.safety_factor;
    thr["sup_abs_lower_root"] = art.threshold.sup_abs_lower_root;
    thr["sup_abs_upper_root"] = art.threshold.sup_abs_upper_root;
    thr["box"] = {{"tau_lo", art.threshold.box.tau_lo},
                  {"tau_hi", art.threshold.box.tau_hi},
                  {"x_lo", art.threshold.box.x_lo},
                  {"x_hi", art.threshold.box.x_hi}};
    thr["samples_per_axis"] = art.threshold.samples_per_axis;
    thr["discriminant_clamped"] = art.threshold.clamped_count;
    thr["discriminant_violations"] = art.threshold.violation_count;
    thr["worst_raw_discriminant"] = art.threshold.worst_raw_discriminant;
    root["threshold"] = std::move(thr);

    root["envelopes"] = {{"Y", art.env.Y}, {"Q", art.env.Q}};

    root["a2_bound"] = {
        {"k14", art.growth.k14},
        {"k15", art.growth.k15},
        {"k16", art.growth.k16},
        {"k17", art.growth.k17},
        {"sup_inv_a2_at_tau_min", art.growth.sup_inv_a2_at_tau_min}};

    Json blow = Json::object();
    blow["criterion_y"] = art.blowup.criterion_y;
    blow["criterion_q"] = art.blowup.criterion_q;
    blow["eps"] = art.blowup.eps;
    if (art.blowup.criterion_y || art.blowup.criterion_q)
        blow["predicted_T_bound"] = art.blowup.predicted_T_bound;
    else
        blow["predicted_T_bound"] = nullptr;
    if (rec.triggered) blow["detected_T"] = rec.detected_T;
    root["blowup_bound"] = std::move(blow);

    Json bc = Json::object();
    bc["k"] = art.bounds.k;
    bc["k1"] = art.bounds.k1;
    bc["k2"] = art.bounds.k2;
    bc["k_ml"] = art.bounds.k_ml;
    bc["k_mr"] = art.bounds.k_mr;
    bc["k_s"] = art.bounds.k_s;
    bc["k_r"] = art.bounds.k_r;
    bc["V"] = art.bounds.V;
    bc["k3"] = art.bounds.k3;
    bc["k4"] = art.bounds.k4;
    bc["k5"] = art.bounds.k5;
    bc["k6"] = art.bounds.k6;
    bc["k7"] = art.bounds.k7;
    bc["k8"] = art.bounds.k8;
    bc["k9"] = art.bounds.k9;
    bc["k10"] = art.bounds.k10;
    bc["k11"] = art.bounds.k11;
    bc["k12"] = art.bounds.k12;
    bc["k13"] = art.bounds.k13;
    bc["n_s"] = art.bounds.n_s;
    bc["n_r"] = art.bounds.n_r;
    bc["n_s_robust"] = art.bounds.n_s_robust;
    bc["n_r_robust"] = art.bounds.n_r_robust;
    bc["segments_extrapolated"] = art.segments_extrapolated;
    root["bounds"] = std::move(bc);

    Json tm = Json::object();
    tm["tau_min"] = art.tau_min.tau_min;
    tm["c_max"] = art.tau_min.c_max;
    tm["p_max"] = art.tau_min.p_max;
    tm["h_max"] = art.tau_min.h_max;
    tm["residual"] = art.tau_min.residual;
    tm["reached"] = art.tau_min.reached;
    if (!art.tau_min.note.empty()) tm["note"] = art.tau_min.note;
    root["tau_min"] = std::move(tm);

    root["lattice"] = {
        {"tau_lo", art.lattice->tau_lo()},
        {"tau_hi", art.lattice->tau_hi()},
        {"clamped_evaluations", art.lattice->clamped_evaluations()}};

    Json mon = Json::object();
    mon["levels_monitored"] = art.monitors.levels_monitored;
    mon["levels_total"] = art.monitors.levels_total;
    mon["total_violations"] = art.monitors.total_violations;
    mon["all_passed"] = art.monitors.all_passed;
    Json checks = Json::array();
    for (const auto& c : art.monitors.checks)
        checks.push_back(monitor_check_json(c));
    mon["checks"] = std::move(checks);
    root["monitors"] = std::move(mon);

    root["config"] = {{"eos", cfg.eos_name},
                      {"profile", cfg.profile_name},
                      {"initial_family", cfg.initial_family},
                      {"cells", cfg.grid.n_cells},
                      {"horizon_time", cfg.horizon_time},
                      {"eps", cfg.eps}};
    return root;
}

namespace {

void write_run_outputs(const RunConfig& cfg, const SimulationArtifacts& art,
                       const std::string& out_dir) {
    fs::create_directories(out_dir);
    cfg.raw.write_file(out_dir + "/config.txt");
    write_json_file(report_json(cfg, art), out_dir + "/report.json");

    const Grid& grid = art.system->grid();
    write_snapshot_csv(
        out_dir + "/initial.csv", grid,
        art.system->make_state(art.initial.tau, art.initial.u, 0.0));
    write_snapshot_csv(out_dir + "/final.csv", grid, art.run_result.final_state);

    if (cfg.store_trajectory) {
        const Trajectory& traj = art.run_result.trajectory;
        fs::create_directories(out_dir + "/snapshots");
        for (std::size_t lev = 0; lev < traj.times.size();
             lev += static_cast<std::size_t>(cfg.output_stride)) {
            char name[64];
            std::snprintf(name, sizeof(name), "/snapshots/level_%06zu.csv",
                          lev);
            write_snapshot_csv(
                out_dir + name, grid,
                art.system->make_state(traj.tau_levels[lev],
                                       traj.u_levels[lev], traj.times[lev]));
        }
        write_monitor_csv(out_dir + "/monitors.csv", art.monitors);
    }
}

std::string simulate_summary(const SimulationArtifacts& art) {
    const RunRecord& rec = art.run_result.record;
    std::ostringstream os;
    os << "status=" << run_status_name(rec.status) << " steps=" << rec.steps
       << " end_time=" << fmt17(rec.end_time) << "\n";
    os << "N=" << fmt17(art.threshold.N) << " inf_y0=" << fmt17(rec.inf_y0)
       << " inf_q0=" << fmt17(rec.inf_q0) << " eps=" << fmt17(art.blowup.eps)
       << " criterion_y=" << (art.blowup.criterion_y ? "yes" : "no")
       << " criterion_q=" << (art.blowup.criterion_q ? "yes" : "no") << "\n";
    if (art.blowup.criterion_y || art.blowup.criterion_q)
        os << "predicted_T_bound=" << fmt17(art.blowup.predicted_T_bound)
           << "\n";
    if (rec.triggered)
        os << "detected_T=" << fmt17(rec.detected_T) << " (" << rec.trigger
           << " at x=" << fmt17(rec.detected_x) << ")\n";
    if (!rec.abort_reason.empty()) os << "abort: " << rec.abort_reason << "\n";
    os << "monitors: " << art.monitors.total_violations
       << " violation(s) over " << art.monitors.levels_monitored
       << " level(s)\n";
    return os.str();
}

} // namespace

CommandResult cmd_simulate(const RunConfig& cfg, const std::string& out_dir) {
    SimulationArtifacts art = run_simulation(cfg);
    write_run_outputs(cfg, art, out_dir);

    CommandResult res;
    res.message = simulate_summary(art);
    switch (art.run_result.record.status) {
        case RunStatus::ran_to_horizon: res.exit_code = 0; break;
        case RunStatus::blew_up: res.exit_code = 10; break;
        case RunStatus::aborted: res.exit_code = 20; break;
    }
    return res;
}

CommandResult cmd_check(const RunConfig& cfg, const std::string& out_dir) {
    auto law_ptr = make_law(cfg);
    auto profile_ptr = make_profile(cfg, *law_ptr);
    const PressureLaw& law = *law_ptr;
    const EntropyProfile& profile = *profile_ptr;

    // S-range box for the law-only checks
    double S_lo = std::numeric_limits<double>::infinity(), S_hi = -S_lo;
    for (double x : uniform_points(cfg.box.x_lo, cfg.box.x_hi, 513)) {
        S_lo = std::min(S_lo, profile.S(x));
        S_hi = std::max(S_hi, profile.S(x));
    }
    StateBox law_box{cfg.box.tau_lo, cfg.box.tau_hi, S_lo, S_hi};

    std::vector<HypothesisReport> reports;
    reports.push_back(check_h1(law, law_box, cfg.box_samples));
    reports.push_back(
        check_h2(law, profile.S(0.5 * (cfg.box.x_lo + cfg.box.x_hi))));
    reports.push_back(check_h3(law, law_box, cfg.box_samples));
    reports.push_back(check_h4(law, profile, cfg.box, cfg.box_samples));

    const DerivativeConsistency dcons =
        derivative_consistency(law, law_box, std::min(cfg.box_samples, 24));
    const bool dcons_ok = dcons.max_rel_error < 1e-5;
    const SandwichReport sandwich =
        check_pressure_sandwich(law, profile, cfg.box, cfg.box_samples);

    bool all = dcons_ok && sandwich.passed;
    std::ostringstream os;
    Json jconds = Json::array();
    for (const auto& rep : reports) {
        all = all && rep.passed();
        for (const auto& c : rep.conditions) {
            os << (verdict_ok(c.verdict) ? "[PASS] " : "[FAIL] ") << c.id << " "
               << c.name << " margin=" << fmt17(c.margin);
            if (c.verdict == Verdict::vacuous_pass ||
                c.verdict == Verdict::indicative_pass ||
                c.verdict == Verdict::inconclusive)
                os << " (" << verdict_name(c.verdict) << ")";
            os << "\n";
            jconds.push_back(condition_json(c));
        }
    }
    os << (dcons_ok ? "[PASS] " : "[FAIL] ")
       << "derivative_consistency max_rel_error=" << fmt17(dcons.max_rel_error)
       << " worst=" << (dcons.worst_partial.empty() ? "-" : dcons.worst_partial)
       << "\n";
    os << (sandwich.passed ? "[PASS] " : "[FAIL] ")
       << "pressure_sandwich tightest_k=" << fmt17(sandwich.tightest_k)
       << " upper_margin=" << fmt17(sandwich.upper_margin)
       << " lower_margin=" << fmt17(sandwich.lower_margin) << "\n";
    os << (all ? "ALL CHECKS PASSED" : "CHECKS FAILED") << "\n";

    Json root = Json::object();
    root["schema"] = "psys-check-report-1";
    root["passed"] = all;
    root["conditions"] = std::move(jconds);
    root["derivative_consistency"] = {{"max_rel_error", dcons.max_rel_error},
                                      {"worst_partial", dcons.worst_partial},
                                      {"witness_tau", dcons.witness_tau},
                                      {"witness_S", dcons.witness_S},
                                      {"passed", dcons_ok}};
    Json js = Json::object();
    js["passed"] = sandwich.passed;
    js["hard_failure"] = sandwich.hard_failure;
    js["upper_margin"] = sandwich.upper_margin;
    js["lower_margin"] = sandwich.lower_margin;
    js["tightest_k"] = sandwich.tightest_k;
    js["loosest_k"] = sandwich.loosest_k;
    if (!sandwich.note.empty()) js["note"] = sandwich.note;
    root["pressure_sandwich"] = std::move(js);

    fs::create_directories(out_dir);
    cfg.raw.write_file(out_dir + "/config.txt");
    write_json_file(root, out_dir + "/check_report.json");

    CommandResult res;
    res.exit_code = all ? 0 : 1;
    res.message = os.str();
    return res;
}

CommandResult cmd_trace(const RunConfig& cfg, const std::string& out_dir,
                        std::vector<double> seeds, int direction) {
    if (!cfg.store_trajectory)
        throw ConfigError("trace requires run.store_trajectory = true");
    SimulationArtifacts art = run_simulation(cfg);
    if (seeds.empty()) seeds = cfg.trace_seeds;
    if (seeds.empty())
        seeds = {direction > 0 ? art.run_result.record.argmin_y0
                               : art.run_result.record.argmin_q0};

    fs::create_directories(out_dir);
    std::ostringstream os;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        const CharacteristicPath path = trace_characteristic(
            *art.system, art.run_result.trajectory, seeds[i], direction);
        char name[64];
        std::snprintf(name, sizeof(name), "/path_%03zu_%s.csv", i,
                      direction > 0 ? "forward" : "backward");
        write_path_csv(out_dir + name, path);
        os << "seed " << fmt17(seeds[i]) << ": " << path.t.size() << " points";
        if (path.blew_up) os << ", gradient pole at t=" << fmt17(path.blowup_t);
        if (path.truncated) os << ", left the domain";
        os << "\n";
    }
    CommandResult res;
    res.message = os.str();
    return res;
}

CommandResult cmd_sweep(const RunConfig& base, const std::string& out_dir,
                        const std::string& axis,
                        const std::vector<double>& values, int workers) {
    if (axis.empty())
        throw ConfigError(
            "sweep: an axis key is required (e.g. initial.amplitude)");
    if (values.empty()) throw ConfigError("sweep: empty value list");
    if (workers < 1) throw ConfigError("sweep: workers must be >= 1");
    fs::create_directories(out_dir);

    struct Row {
        double value = 0.0;
        double N = kNaN;
        double inf_y0 = kNaN;
        double predicted = kNaN;
        double detected = kNaN;
        std::string status = "error";
        std::string error;
    };
    std::vector<Row> rows(values.size());
    std::atomic<std::size_t> cursor{0};

    auto work = [&]() {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= values.size()) return;
            Row& row = rows[i];
            row.value = values[i];
            char sub[32];
            std::snprintf(sub, sizeof(sub), "/run_%04zu", i);
            try {
                ConfigMap map = base.raw;
                map.set_number(axis, values[i]);
                const RunConfig cfg = run_config_from_map(map);
                SimulationArtifacts art = run_simulation(cfg);
                write_run_outputs(cfg, art, out_dir + sub);
                row.N = art.threshold.N;
                row.inf_y0 = art.run_result.record.inf_y0;
                row.predicted =
                    (art.blowup.criterion_y || art.blowup.criterion_q)
                        ? art.blowup.predicted_T_bound
                        : kNaN;
                row.detected = art.run_result.record.triggered
                                   ? art.run_result.record.detected_T
                                   : kNaN;
                row.status = run_status_name(art.run_result.record.status);
            } catch (const std::exception& e) {
                row.error = e.what();
            }
        }
    };

    const std::size_t nw =
        std::min<std::size_t>(static_cast<std::size_t>(workers), values.size());
    if (nw <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nw);
        for (std::size_t i = 0; i < nw; ++i) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    std::ofstream csv(out_dir + "/sweep.csv");
    if (!csv) throw Error("cannot write '" + out_dir + "/sweep.csv'");
    csv << "value,N,inf_y0,predicted_T_bound,detected_T,status\n";
    std::ostringstream os;
    bool any_error = false;
    for (const auto& row : rows) {
        csv << csv_cell(row.value) << ',' << csv_cell(row.N) << ','
            << csv_cell(row.inf_y0) << ',' << csv_cell(row.predicted) << ','
            << csv_cell(row.detected) << ',' << row.status << '\n';
        os << axis << "=" << fmt17(row.value) << " -> " << row.status;
        if (!row.error.empty()) {
            os << " (" << row.error << ")";
            any_error = true;
        }
        os << "\n";
    }
    CommandResult res;
    res.exit_code = any_error ? 1 : 0;
    res.message = os.str();
    return res;
}

} // namespace psys
