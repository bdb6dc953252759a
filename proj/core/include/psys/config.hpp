#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "psys/common.hpp"
#include "psys/entropy_profile.hpp"
#include "psys/pressure_law.hpp"
#include "psys/solver.hpp"

namespace psys {

/// Flat dotted-key configuration file: one `key = value` per line, `#` starts
/// a comment, blank lines ignored. Values are free text; typed getters parse
/// numbers, integers, booleans and comma-separated number lists on demand and
/// report the offending key and line on failure. canonical() emits sorted
/// keys with numeric values normalized to 17 significant digits, so
/// parse -> canonical -> parse is the identity.
class ConfigMap {
public:
    ConfigMap() = default;

    static ConfigMap parse_file(const std::string& path);
    static ConfigMap parse_string(const std::string& text,
                                  const std::string& origin = "<string>");

    bool has(const std::string& key) const;
    double get_number(const std::string& key) const;
    double get_number(const std::string& key, double fallback) const;
    long get_int(const std::string& key) const;
    long get_int(const std::string& key, long fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    std::vector<double> get_numbers(const std::string& key) const; // may be empty

    void set_number(const std::string& key, double value);
    void set_string(const std::string& key, const std::string& value);

    /// Keys sharing a dotted prefix ("eos." -> eos.gamma, ...), sorted.
    std::vector<std::string> keys_with_prefix(const std::string& prefix) const;
    /// Numeric leaves under a prefix, keyed by the suffix after it. Keys whose
    /// values do not parse as numbers are skipped.
    std::map<std::string, double> numbers_with_prefix(const std::string& prefix) const;

    std::string canonical() const;
    void write_file(const std::string& path) const;
    const std::map<std::string, std::string>& entries() const { return values_; }

private:
    std::map<std::string, std::string> values_;
    std::map<std::string, int> lines_;
    std::string origin_ = "<empty>";

    [[noreturn]] void fail(const std::string& key, const std::string& what) const;
};

/// Fully-typed run configuration assembled from a ConfigMap.
struct RunConfig {
    // equation of state
    std::string eos_name = "gamma-law";
    std::map<std::string, double> eos_params;           // gamma, K, c_v, ...
    std::map<std::string, double> constant_overrides;   // k, A, k1, k2, l1..l8

    // entropy profile
    std::string profile_name = "constant";
    std::map<std::string, double> profile_params;
    std::string profile_knots; // "x0:S0,x1:S1,..." for piecewise-linear

    // grid + scheme
    Grid grid{};
    double cfl = 0.4;

    // initial data
    std::string initial_family = "sech2-pulse";
    std::map<std::string, double> initial_params;
    std::string initial_file; // custom-table

    // run controls
    double horizon_time = 1.0;
    double sentinel_factor = 1e3;
    double eps = 0.05;
    double tau_floor = 0.0; // <= 0: auto (1e-4 * min initial tau)
    long max_steps = 20'000'000;
    bool store_trajectory = true;

    // output
    std::string output_dir = "out";
    int output_stride = 1; // snapshot CSV emission stride over stored levels

    // characteristic tracing
    std::vector<double> trace_seeds;
    int trace_direction = +1;

    // certification box + sampling
    StateBox box{};
    int box_samples = 96;

    // thermo lattice
    double lattice_tau_lo = 0.0, lattice_tau_hi = 0.0; // <= 0: auto from box
    int lattice_n_tau = 257;
    int lattice_n_x = 65;

    // sweep
    std::string sweep_axis;
    std::vector<double> sweep_values;
    int workers = 1;

    ConfigMap raw; // original map, kept for re-emission and sweep mutation
};

RunConfig run_config_from_map(const ConfigMap& map);
RunConfig load_run_config(const std::string& path);

/// Instantiate the configured pressure law with any constant overrides applied.
std::unique_ptr<PressureLaw> make_law(const RunConfig& config);
/// Instantiate the configured entropy profile (c_v taken from the law).
std::unique_ptr<EntropyProfile> make_profile(const RunConfig& config,
                                             const PressureLaw& law);

} // namespace psys
