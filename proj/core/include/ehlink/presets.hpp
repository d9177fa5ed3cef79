#pragma once

#include "ehlink/engine.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace ehlink {

/// One canned experiment: a base configuration, a sweep axis with its
/// values, and the policies to run at every point.
struct ExperimentPreset {
    std::string name;
    SimConfig base;
    SweepAxis axis = SweepAxis::TxProb;
    std::vector<double> values;
    std::vector<PolicySpec> policies;
};

bool is_preset_name(std::string_view name);

/// fig1..fig4. Throws ConfigError for unknown names.
ExperimentPreset make_preset(std::string_view name);

struct RunOverrides {
    std::optional<std::uint64_t> horizon;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint32_t> trials;
};

/// Runs the preset and writes the CSV (header plus one row per
/// (value, policy, trial)). Uncoordinated policies without a fixed
/// pattern are calibrated per sweep point from a coordinated pilot run.
void run_preset(const ExperimentPreset& preset, const RunOverrides& overrides,
                std::ostream& out);

/// Pattern calibration used for preset and CLI runs: a coordinated pilot
/// of bounded horizon on a seed derived from (seed, point_index).
BatchPattern calibrate_from_pilot(const SimConfig& base, std::uint64_t point_index);

} // namespace ehlink
