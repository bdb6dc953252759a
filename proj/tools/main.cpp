// psys: hypothesis certification, p-system simulation, characteristic
// tracing and parameter sweeps, driven by a flat key = value config file.
//
// Exit codes: 0 ran-to-horizon / checks passed, 10 blew up (successful
// detection), 20 aborted, 1 config or usage error.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "psys/pipeline.hpp"

int main(int argc, char** argv) {
    CLI::App app{"p-system blow-up laboratory"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::vector<double> seeds;
    std::string direction_str;
    std::string axis;
    std::vector<double> values;
    int workers = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "configuration file")
            ->required()
            ->check(CLI::ExistingFile);
        sub->add_option("--out", out_dir,
                        "output directory (default: output.dir from the config)");
    };

    CLI::App* check = app.add_subcommand(
        "check", "certify the structural hypotheses of the configured "
                 "pressure law on the configured box");
    add_common(check);

    CLI::App* simulate = app.add_subcommand(
        "simulate", "run the full pipeline: bounds, threshold, simulation, "
                    "monitors, reports");
    add_common(simulate);

    CLI::App* trace = app.add_subcommand(
        "trace", "re-run the configured simulation and integrate gradient "
                 "ODEs along characteristics");
    add_common(trace);
    trace->add_option("--seed-x", seeds,
                      "characteristic seed position (repeatable)");
    trace
        ->add_option("--direction", direction_str,
                     "characteristic family to follow")
        ->check(CLI::IsMember({"forward", "backward"}));

    CLI::App* sweep = app.add_subcommand(
        "sweep", "repeat the simulation varying one scalar config key");
    add_common(sweep);
    sweep->add_option("--axis", axis, "config key to vary, e.g. initial.amplitude");
    sweep->add_option("--values", values, "comma-separated list of axis values")
        ->delimiter(',');
    sweep->add_option("--workers", workers, "concurrent runs (default from config)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1; // help exits clean; any parse error is usage
    }

    try {
        const psys::RunConfig cfg = psys::load_run_config(config_path);
        const std::string out = out_dir.empty() ? cfg.output_dir : out_dir;

        psys::CommandResult result;
        if (*check) {
            result = psys::cmd_check(cfg, out);
        } else if (*simulate) {
            result = psys::cmd_simulate(cfg, out);
        } else if (*trace) {
            int direction = cfg.trace_direction;
            if (!direction_str.empty())
                direction = direction_str == "forward" ? +1 : -1;
            result = psys::cmd_trace(cfg, out, seeds, direction);
        } else if (*sweep) {
            const std::string ax = axis.empty() ? cfg.sweep_axis : axis;
            const std::vector<double>& vals =
                values.empty() ? cfg.sweep_values : values;
            const int nw = workers > 0 ? workers : cfg.workers;
            result = psys::cmd_sweep(cfg, out, ax, vals, nw);
        }

        std::cout << result.message;
        return result.exit_code;
    } catch (const psys::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
