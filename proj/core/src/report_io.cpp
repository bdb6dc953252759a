#include "psys/report_io.hpp"

#include <cmath>
#include <fstream>

namespace psys {

void write_json_file(const Json& doc, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");
    out << doc.dump(2) << "\n";
}

std::string csv_cell(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return fmt17(v);
}

void write_snapshot_csv(const std::string& path, const Grid& grid,
                        const FieldState& state) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");
    out << "t,x,tau,u,c,p,h,s,r,y,q\n";
    for (int i = 0; i < grid.n_cells; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        out << csv_cell(state.t) << ',' << csv_cell(grid.center(i)) << ','
            << csv_cell(state.tau[idx]) << ',' << csv_cell(state.u[idx]) << ','
            << csv_cell(state.c[idx]) << ',' << csv_cell(state.p[idx]) << ','
            << csv_cell(state.h[idx]) << ',' << csv_cell(state.s[idx]) << ','
            << csv_cell(state.r[idx]) << ',' << csv_cell(state.y[idx]) << ','
            << csv_cell(state.q[idx]) << '\n';
    }
}

void write_path_csv(const std::string& path, const CharacteristicPath& trace) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");
    const char* v_name = trace.direction > 0 ? "y" : "q";
    out << "t,x," << v_name << ',' << v_name << "_fd,a0,a1,a2\n";
    for (std::size_t i = 0; i < trace.t.size(); ++i) {
        out << csv_cell(trace.t[i]) << ',' << csv_cell(trace.x[i]) << ','
            << csv_cell(trace.v[i]) << ',' << csv_cell(trace.v_fd[i]) << ','
            << csv_cell(trace.a0[i]) << ',' << csv_cell(trace.a1[i]) << ','
            << csv_cell(trace.a2[i]) << '\n';
    }
}

void write_monitor_csv(const std::string& path, const MonitorLog& log) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");
    out << "t";
    for (const auto& check : log.checks) out << ',' << check.name;
    out << '\n';
    for (std::size_t lev = 0; lev < log.times.size(); ++lev) {
        out << csv_cell(log.times[lev]);
        for (const auto& check : log.checks) {
            out << ',';
            if (lev < check.step_margins.size() &&
                !std::isnan(check.step_margins[lev]))
                out << csv_cell(check.step_margins[lev]);
        }
        out << '\n';
    }
}

} // namespace psys
