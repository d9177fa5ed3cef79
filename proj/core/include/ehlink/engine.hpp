#pragma once

#include "ehlink/harvest.hpp"
#include "ehlink/metrics.hpp"
#include "ehlink/policies.hpp"
#include "ehlink/trace.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ehlink {

enum class RecordMode { SummaryOnly, FullTrace };

/// Full-trace recording is bounded to keep memory in check; summary-only
/// runs stream and have no horizon limit.
inline constexpr std::uint64_t kMaxTraceSlots = 1'000'000;

struct PolicySpec {
    PolicyKind kind = PolicyKind::Unconstrained;
    double beta_t = 2.0;
    std::uint64_t dilation_f = 1;             // dilated policy only
    std::optional<BatchPattern> pattern;      // uncoordinated policy only
};

struct SimConfig {
    std::uint64_t horizon = 10'000'000;
    std::uint64_t seed = 1;
    double rx_cost = 0.5;
    HarvestProcess tx_harvest = HarvestProcess::bernoulli(0.4);
    HarvestProcess rx_harvest = HarvestProcess::bernoulli(0.3);
    double tx_capacity = 50.0;
    double rx_capacity = 50.0;
    double tx_initial_fraction = 0.5;
    double rx_initial_fraction = 0.5;
    PolicySpec policy;
    RecordMode record_mode = RecordMode::SummaryOnly;

    LinkParams link() const noexcept {
        return {tx_harvest.mean(), rx_harvest.mean(), rx_cost};
    }
};

/// All invariant violations in the config, each naming the offending key.
/// Empty means the config is runnable.
std::vector<std::string> validate(const SimConfig& config);

struct RunResult {
    SimSummary summary;
    std::optional<Trace> trace;
};

/// Runs one seeded link simulation. Deterministic: the same config yields
/// a bit-identical summary and trace. Throws ConfigError for invalid
/// configs and ContractViolation (with slot context) for policy bugs.
RunResult run_link(const SimConfig& config);

enum class SweepAxis { TxProb, RxProb, TxCapacity, RxCapacity, BothCapacities, DilationF };

/// Maps a config key ("harvest.tx.prob", "battery.capacity", ...) to its
/// sweep axis; nullopt for unknown keys.
std::optional<SweepAxis> sweep_axis_from_key(std::string_view key);
std::string_view sweep_axis_key(SweepAxis axis) noexcept;

/// Sets the swept parameter on a config. Throws ConfigError for
/// non-integer dilation factors.
void apply_sweep_value(SimConfig& config, SweepAxis axis, double value);

struct SweepRow {
    double axis_value = 0.0;
    std::uint32_t trial = 0;
    SimSummary summary;
};

/// One run per (value, trial), seeds derived from the base seed and the
/// point/trial indices, executed on a small worker pool. Rows come back
/// ordered by (value index, trial). point_offset shifts the point index
/// used for seed derivation so that split sweeps stay seed-compatible
/// with one combined sweep.
std::vector<SweepRow> run_sweep(const SimConfig& base, SweepAxis axis,
                                std::span<const double> values, std::uint32_t trials,
                                std::uint64_t point_offset = 0);

} // namespace ehlink
