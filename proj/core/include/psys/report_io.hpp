#pragma once

#include <string>

#include "json.hpp"

#include "psys/characteristic.hpp"
#include "psys/monitor.hpp"
#include "psys/solver.hpp"

namespace psys {

/// Report document type: insertion-ordered members, deterministic dumps.
/// Non-finite numbers serialize as null.
using Json = nlohmann::ordered_json;

/// Pretty-printed (2-space indent) with a trailing newline.
void write_json_file(const Json& doc, const std::string& path);

/// CSV number cell: 17 significant digits; non-finite prints as nan/inf so
/// cells are never empty.
std::string csv_cell(double v);

/// Header t,x,tau,u,c,p,h,s,r,y,q; one row per cell.
void write_snapshot_csv(const std::string& path, const Grid& grid,
                        const FieldState& state);

/// Header t,x,{y|q},{y_fd|q_fd},a0,a1,a2 depending on the path direction.
void write_path_csv(const std::string& path, const CharacteristicPath& trace);

/// Header t followed by one column per monitored inequality, rows being the
/// per-level worst-over-x margins (empty cell where a check did not apply).
void write_monitor_csv(const std::string& path, const MonitorLog& log);

} // namespace psys
