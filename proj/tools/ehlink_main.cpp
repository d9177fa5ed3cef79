// Command-line front end: canned experiments, config-driven runs,
// config validation and pattern calibration.
#include "ehlink/config.hpp"
#include "ehlink/engine.hpp"
#include "ehlink/errors.hpp"
#include "ehlink/presets.hpp"
#include "ehlink/report.hpp"
#include "ehlink/rng.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace ehlink;

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot write output file: " + path);
    }
    return out;
}

int run_command(const std::string& target, const RunOverrides& overrides,
                std::string out_path, bool trace) {
    if (is_preset_name(target)) {
        if (trace) {
            throw ConfigError("--trace is only available for config-file runs");
        }
        if (out_path.empty()) {
            out_path = target + ".csv";
        }
        ExperimentPreset preset = make_preset(target);
        std::ofstream out = open_output(out_path);
        run_preset(preset, overrides, out);
        std::cout << "wrote " << out_path << "\n";
        return 0;
    }

    LoadedConfig loaded = load_config(parse_config_file(target));
    if (overrides.horizon) {
        loaded.sim.horizon = *overrides.horizon;
    }
    if (overrides.seed) {
        loaded.sim.seed = *overrides.seed;
    }
    std::uint32_t trials = overrides.trials.value_or(loaded.trials);
    if (out_path.empty()) {
        out_path = "run.csv";
    }

    if (loaded.sweep_axis) {
        if (trace) {
            throw ConfigError("--trace is only available for single runs, not sweeps");
        }
        auto rows = run_sweep(loaded.sim, *loaded.sweep_axis, loaded.sweep_values, trials);
        std::ofstream out = open_output(out_path);
        out << csv_header() << '\n';
        write_rows(out, "custom", sweep_axis_key(*loaded.sweep_axis), rows);
        std::cout << "wrote " << out_path << "\n";
        return 0;
    }

    if (trace && trials != 1) {
        throw ConfigError("--trace needs trials == 1");
    }
    std::ofstream out = open_output(out_path);
    out << csv_header() << '\n';
    for (std::uint32_t t = 0; t < trials; ++t) {
        SimConfig cfg = loaded.sim;
        cfg.seed = run_seed(loaded.sim.seed, 0, t);
        cfg.record_mode = trace ? RecordMode::FullTrace : RecordMode::SummaryOnly;
        RunResult result = run_link(cfg);
        out << csv_row("custom", "none", 0.0, t, result.summary) << '\n';
        if (trace && result.trace) {
            std::string trace_path = out_path + ".trace.csv";
            std::ofstream tout = open_output(trace_path);
            write_trace(tout, *result.trace);
            std::cout << "wrote " << trace_path << "\n";
        }
    }
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

int validate_command(const std::string& path) {
    ConfigMap map = parse_config_file(path);
    std::vector<std::string> violations = validate_config_map(map);
    if (violations.empty()) {
        std::cout << "ok\n";
        return 0;
    }
    for (const std::string& v : violations) {
        std::cout << "violation: " << v << "\n";
    }
    return 2;
}

int calibrate_command(const std::string& path, const RunOverrides& overrides) {
    ConfigMap map = parse_config_file(path);
    map["policy.kind"] = "coordinated";
    map.erase("policy.pattern.n_plus");
    map.erase("policy.pattern.n_minus");
    LoadedConfig loaded = load_config(map);
    if (overrides.horizon) {
        loaded.sim.horizon = *overrides.horizon;
    }
    if (overrides.seed) {
        loaded.sim.seed = *overrides.seed;
    }
    loaded.sim.horizon = std::max<std::uint64_t>(loaded.sim.horizon, 100'000);
    loaded.sim.record_mode = RecordMode::SummaryOnly;

    SimSummary s = run_link(loaded.sim).summary;
    BatchPattern pattern = calibrate_pattern(s.rx_slots_above_half, s.rx_slots_below_half);
    std::cout << "n_plus=" << pattern.n_plus << " n_minus=" << pattern.n_minus
              << " (above=" << s.rx_slots_above_half << " below=" << s.rx_slots_below_half
              << " horizon=" << s.horizon << ")\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Seeded Monte Carlo simulator for a dual energy-harvesting link"};
    app.require_subcommand(1);

    std::string target;
    std::string out_path;
    std::string config_path;
    bool trace = false;
    std::optional<std::uint64_t> horizon;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint32_t> trials;

    CLI::App* run = app.add_subcommand("run", "Run a preset (fig1..fig4) or a config file");
    run->add_option("target", target, "Preset name or config path")->required();
    run->add_option("--horizon", horizon, "Override the slot horizon");
    run->add_option("--seed", seed, "Override the master seed");
    run->add_option("--trials", trials, "Independent trials per sweep point");
    run->add_option("--out", out_path, "Output CSV path");
    run->add_flag("--trace", trace, "Also write the per-slot trace (single runs)");

    CLI::App* validate_cmd = app.add_subcommand("validate", "Check a config file");
    validate_cmd->add_option("config", config_path, "Config path")->required();

    CLI::App* calibrate_cmd =
        app.add_subcommand("calibrate", "Derive the feedback-free on-pattern from a pilot run");
    calibrate_cmd->add_option("config", config_path, "Config path")->required();
    calibrate_cmd->add_option("--horizon", horizon, "Pilot horizon (at least 1e5 slots)");
    calibrate_cmd->add_option("--seed", seed, "Pilot seed");

    CLI11_PARSE(app, argc, argv);

    RunOverrides overrides{horizon, seed, trials};
    try {
        if (run->parsed()) {
            return run_command(target, overrides, out_path, trace);
        }
        if (validate_cmd->parsed()) {
            return validate_command(config_path);
        }
        if (calibrate_cmd->parsed()) {
            return calibrate_command(config_path, overrides);
        }
    } catch (const ehlink::ContractViolation& e) {
        std::cerr << "contract violation: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
