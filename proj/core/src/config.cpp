#include "psys/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace psys {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

bool parse_double(const std::string& text, double& out) {
    const std::string t = trim(text);
    if (t.empty()) return false;
    char* end = nullptr;
    out = std::strtod(t.c_str(), &end);
    return end == t.c_str() + t.size();
}

bool valid_key(const std::string& key) {
    if (key.empty() || key.front() == '.' || key.back() == '.') return false;
    for (char ch : key) {
        const bool ok = std::isalnum(static_cast<unsigned char>(ch)) ||
                        ch == '.' || ch == '_' || ch == '-';
        if (!ok) return false;
        if (ch == '.' && &ch != key.data() && *(&ch - 1) == '.') return false;
    }
    return true;
}

} // namespace

void ConfigMap::fail(const std::string& key, const std::string& what) const {
    auto it = lines_.find(key);
    const std::string where =
        it == lines_.end() ? origin_ : origin_ + ":" + std::to_string(it->second);
    throw ConfigError(where + ": key '" + key + "': " + what);
}

ConfigMap ConfigMap::parse_string(const std::string& text,
                                  const std::string& origin) {
    ConfigMap map;
    map.origin_ = origin;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": expected 'key = value', got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!valid_key(key))
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": malformed key '" + key + "'");
        if (map.values_.count(key))
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": duplicate key '" + key + "' (first at line " +
                              std::to_string(map.lines_.at(key)) + ")");
        map.values_[key] = value;
        map.lines_[key] = lineno;
    }
    return map;
}

ConfigMap ConfigMap::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_string(buf.str(), path);
}

bool ConfigMap::has(const std::string& key) const { return values_.count(key) > 0; }

double ConfigMap::get_number(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) fail(key, "missing required numeric key");
    double v = 0.0;
    if (!parse_double(it->second, v))
        fail(key, "cannot parse '" + it->second + "' as a number");
    return v;
}

double ConfigMap::get_number(const std::string& key, double fallback) const {
    return has(key) ? get_number(key) : fallback;
}

long ConfigMap::get_int(const std::string& key) const {
    const double v = get_number(key);
    const long n = static_cast<long>(v);
    if (static_cast<double>(n) != v)
        fail(key, "expected an integer, got " + fmt17(v));
    return n;
}

long ConfigMap::get_int(const std::string& key, long fallback) const {
    return has(key) ? get_int(key) : fallback;
}

bool ConfigMap::get_bool(const std::string& key, bool fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    const std::string v = trim(it->second);
    if (v == "true" || v == "on" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "off" || v == "no" || v == "0") return false;
    fail(key, "cannot parse '" + v + "' as a boolean");
}

std::string ConfigMap::get_string(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) fail(key, "missing required key");
    return it->second;
}

std::string ConfigMap::get_string(const std::string& key,
                                  const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

std::vector<double> ConfigMap::get_numbers(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) return {};
    std::vector<double> out;
    std::stringstream ss(it->second);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        cell = trim(cell);
        if (cell.empty()) continue;
        double v = 0.0;
        if (!parse_double(cell, v))
            fail(key, "cannot parse list element '" + cell + "' as a number");
        out.push_back(v);
    }
    return out;
}

void ConfigMap::set_number(const std::string& key, double value) {
    values_[key] = fmt17(value);
}

void ConfigMap::set_string(const std::string& key, const std::string& value) {
    values_[key] = value;
}

std::vector<std::string> ConfigMap::keys_with_prefix(
    const std::string& prefix) const {
    std::vector<std::string> out;
    for (auto it = values_.lower_bound(prefix); it != values_.end(); ++it) {
        if (it->first.compare(0, prefix.size(), prefix) != 0) break;
        out.push_back(it->first);
    }
    return out;
}

std::map<std::string, double> ConfigMap::numbers_with_prefix(
    const std::string& prefix) const {
    std::map<std::string, double> out;
    for (const auto& key : keys_with_prefix(prefix)) {
        double v = 0.0;
        if (parse_double(values_.at(key), v)) out[key.substr(prefix.size())] = v;
    }
    return out;
}

std::string ConfigMap::canonical() const {
    std::ostringstream out;
    for (const auto& [key, value] : values_) {
        double v = 0.0;
        if (parse_double(value, v))
            out << key << " = " << fmt17(v) << "\n";
        else {
            // normalize number lists element-wise; other text verbatim
            bool is_list = value.find(',') != std::string::npos;
            if (is_list) {
                std::vector<std::string> cells;
                std::stringstream ss(value);
                std::string cell;
                bool all_numeric = true;
                while (std::getline(ss, cell, ',')) {
                    double cv = 0.0;
                    if (!parse_double(cell, cv)) {
                        all_numeric = false;
                        break;
                    }
                    cells.push_back(fmt17(cv));
                }
                if (all_numeric && !cells.empty()) {
                    out << key << " = ";
                    for (std::size_t i = 0; i < cells.size(); ++i)
                        out << (i ? ", " : "") << cells[i];
                    out << "\n";
                    continue;
                }
            }
            out << key << " = " << value << "\n";
        }
    }
    return out.str();
}

void ConfigMap::write_file(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write config file '" + path + "'");
    out << canonical();
}

namespace {

std::map<std::string, double> params_without(
    std::map<std::string, double> params, std::initializer_list<const char*> drop) {
    for (const char* key : drop) params.erase(key);
    return params;
}

} // namespace

RunConfig run_config_from_map(const ConfigMap& map) {
    RunConfig c;
    c.raw = map;

    c.eos_name = map.get_string("eos.name", "gamma-law");
    c.eos_params = map.numbers_with_prefix("eos.");
    c.constant_overrides = map.numbers_with_prefix("constants.");

    c.profile_name = map.get_string("profile.name", "constant");
    c.profile_params = params_without(map.numbers_with_prefix("profile."), {});
    c.profile_knots = map.get_string("profile.knots", "");

    c.grid.x_left = map.get_number("grid.x_left", -10.0);
    c.grid.x_right = map.get_number("grid.x_right", 10.0);
    c.grid.n_cells = static_cast<int>(map.get_int("grid.cells", 256));
    const std::string boundary = map.get_string("grid.boundary", "periodic");
    if (boundary == "periodic")
        c.grid.boundary = Boundary::periodic;
    else if (boundary == "outflow")
        c.grid.boundary = Boundary::outflow;
    else
        throw ConfigError("grid.boundary must be 'periodic' or 'outflow', got '" +
                          boundary + "'");
    c.cfl = map.get_number("grid.cfl", 0.4);

    c.initial_family = map.get_string("initial.family", "sech2-pulse");
    c.initial_params = map.numbers_with_prefix("initial.");
    c.initial_params.erase("family");
    c.initial_file = map.get_string("initial.file", "");

    c.horizon_time = map.get_number("run.horizon_time", 1.0);
    c.sentinel_factor = map.get_number("run.sentinel_factor", 1e3);
    c.eps = map.get_number("run.eps", 0.05);
    c.tau_floor = map.get_number("run.tau_floor", 0.0);
    c.max_steps = map.get_int("run.max_steps", 20'000'000L);
    c.store_trajectory = map.get_bool("run.store_trajectory", true);

    c.output_dir = map.get_string("output.dir", "out");
    c.output_stride = static_cast<int>(map.get_int("output.stride", 1));
    if (c.output_stride < 1)
        throw ConfigError("output.stride must be a positive integer");

    c.trace_seeds = map.get_numbers("trace.seeds");
    const std::string dir = map.get_string("trace.direction", "forward");
    if (dir == "forward")
        c.trace_direction = +1;
    else if (dir == "backward")
        c.trace_direction = -1;
    else
        throw ConfigError("trace.direction must be 'forward' or 'backward', got '" +
                          dir + "'");

    c.box.tau_lo = map.get_number("box.tau_lo", 0.2);
    c.box.tau_hi = map.get_number("box.tau_hi", 5.0);
    c.box.x_lo = map.get_number("box.x_lo", c.grid.x_left);
    c.box.x_hi = map.get_number("box.x_hi", c.grid.x_right);
    c.box_samples = static_cast<int>(map.get_int("box.samples", 96));

    c.lattice_tau_lo = map.get_number("lattice.tau_lo", 0.0);
    c.lattice_tau_hi = map.get_number("lattice.tau_hi", 0.0);
    c.lattice_n_tau = static_cast<int>(map.get_int("lattice.n_tau", 257));
    c.lattice_n_x = static_cast<int>(map.get_int("lattice.n_x", 65));

    c.sweep_axis = map.get_string("sweep.axis", "");
    c.sweep_values = map.get_numbers("sweep.values");
    c.workers = static_cast<int>(map.get_int("sweep.workers", 1));
    if (c.workers < 1) throw ConfigError("sweep.workers must be >= 1");

    if (!(c.horizon_time > 0.0))
        throw ConfigError("run.horizon_time must be positive");
    if (!(c.sentinel_factor > 0.0))
        throw ConfigError("run.sentinel_factor must be positive");
    if (!(c.eps > 0.0)) throw ConfigError("run.eps must be positive");
    if (!(c.cfl > 0.0 && c.cfl < 1.0))
        throw ConfigError("grid.cfl must lie in (0, 1)");
    return c;
}

RunConfig load_run_config(const std::string& path) {
    return run_config_from_map(ConfigMap::parse_file(path));
}

std::unique_ptr<PressureLaw> make_law(const RunConfig& config) {
    auto params = config.eos_params;
    params.erase("name");
    auto law = make_pressure_law(config.eos_name, params);
    if (!config.constant_overrides.empty()) {
        DeclaredConstants k = law->constants();
        for (const auto& [key, value] : config.constant_overrides) {
            if (key == "k")
                k.k = value;
            else if (key == "A")
                k.A = value;
            else if (key == "k1")
                k.k1 = value;
            else if (key == "k2")
                k.k2 = value;
            else if (key.size() == 2 && key[0] == 'l' && key[1] >= '1' &&
                     key[1] <= '8')
                k.l[key[1] - '1'] = value;
            else
                throw ConfigError("unknown declared-constant override 'constants." +
                                  key + "'");
        }
        law->set_constants(k);
    }
    return law;
}

std::unique_ptr<EntropyProfile> make_profile(const RunConfig& config,
                                             const PressureLaw& law) {
    auto params = config.profile_params;
    params.erase("name");
    params.erase("knots");
    return make_entropy_profile(config.profile_name, params, config.profile_knots,
                                law.c_v());
}

} // namespace psys
