#include "ehlink/presets.hpp"

#include "ehlink/errors.hpp"
#include "ehlink/report.hpp"
#include "ehlink/rng.hpp"

#include <algorithm>
#include <string>

namespace ehlink {

bool is_preset_name(std::string_view name) {
    return name == "fig1" || name == "fig2" || name == "fig3" || name == "fig4";
}

ExperimentPreset make_preset(std::string_view name) {
    ExperimentPreset p;
    p.name = std::string(name);
    p.base.horizon = 10'000'000;
    p.base.seed = 1;
    p.base.rx_cost = 0.5;
    if (name == "fig1") {
        // Receiver harvests faster than it spends; only the transmitter limits.
        p.base.tx_harvest = HarvestProcess::bernoulli(0.4);
        p.base.rx_harvest = HarvestProcess::bernoulli(0.6);
        p.base.tx_capacity = 50.0;
        p.base.rx_capacity = 50.0;
        p.axis = SweepAxis::TxProb;
        p.values = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
        p.policies = {PolicySpec{.kind = PolicyKind::Unconstrained}};
    } else if (name == "fig2") {
        p.base.tx_harvest = HarvestProcess::bernoulli(0.4);
        p.base.rx_harvest = HarvestProcess::bernoulli(0.3);
        p.base.tx_capacity = 1000.0;
        p.base.rx_capacity = 1000.0;
        p.axis = SweepAxis::RxProb;
        p.values = {0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45};
        p.policies = {PolicySpec{.kind = PolicyKind::Coordinated},
                      PolicySpec{.kind = PolicyKind::Dilated, .dilation_f = 100}};
    } else if (name == "fig3") {
        p.base.tx_harvest = HarvestProcess::bernoulli(0.4);
        p.base.rx_harvest = HarvestProcess::bernoulli(0.3);
        p.base.tx_capacity = 50.0;
        p.base.rx_capacity = 50.0;
        p.axis = SweepAxis::BothCapacities;
        p.values = {10, 20, 50, 100, 200, 500, 1000};
        p.policies = {PolicySpec{.kind = PolicyKind::Coordinated}};
    } else if (name == "fig4") {
        p.base.tx_harvest = HarvestProcess::bernoulli(0.4);
        p.base.rx_harvest = HarvestProcess::bernoulli(0.3);
        p.base.tx_capacity = 50.0;
        p.base.rx_capacity = 50.0;
        p.axis = SweepAxis::RxProb;
        p.values = {0.1, 0.2, 0.4};
        p.policies = {PolicySpec{.kind = PolicyKind::Coordinated},
                      PolicySpec{.kind = PolicyKind::Uncoordinated}};
    } else {
        throw ConfigError("unknown preset '" + std::string(name) +
                          "' (expected fig1|fig2|fig3|fig4)");
    }
    return p;
}

BatchPattern calibrate_from_pilot(const SimConfig& base, std::uint64_t point_index) {
    SimConfig pilot = base;
    pilot.policy.kind = PolicyKind::Coordinated;
    pilot.policy.pattern.reset();
    pilot.record_mode = RecordMode::SummaryOnly;
    pilot.horizon = std::clamp<std::uint64_t>(base.horizon, 100'000, 1'000'000);
    pilot.seed = derive_seed(run_seed(base.seed, point_index, 0), 2);
    SimSummary s = run_link(pilot).summary;
    return calibrate_pattern(s.rx_slots_above_half, s.rx_slots_below_half);
}

void run_preset(const ExperimentPreset& preset, const RunOverrides& overrides,
                std::ostream& out) {
    SimConfig base = preset.base;
    if (overrides.horizon) {
        base.horizon = *overrides.horizon;
    }
    if (overrides.seed) {
        base.seed = *overrides.seed;
    }
    const std::uint32_t trials = overrides.trials.value_or(1);

    std::vector<std::vector<SweepRow>> rows_by_policy;
    rows_by_policy.reserve(preset.policies.size());
    for (const PolicySpec& spec : preset.policies) {
        SimConfig cfg = base;
        cfg.policy = spec;
        if (spec.kind == PolicyKind::Uncoordinated && !spec.pattern) {
            std::vector<SweepRow> rows;
            rows.reserve(preset.values.size() * trials);
            for (std::size_t vi = 0; vi < preset.values.size(); ++vi) {
                SimConfig point_cfg = cfg;
                apply_sweep_value(point_cfg, preset.axis, preset.values[vi]);
                point_cfg.policy.pattern = calibrate_from_pilot(point_cfg, vi);
                std::vector<SweepRow> point_rows =
                    run_sweep(point_cfg, preset.axis, {&preset.values[vi], 1}, trials, vi);
                rows.insert(rows.end(), point_rows.begin(), point_rows.end());
            }
            rows_by_policy.push_back(std::move(rows));
        } else {
            rows_by_policy.push_back(run_sweep(cfg, preset.axis, preset.values, trials));
        }
    }

    out << csv_header() << '\n';
    std::string_view axis_key = sweep_axis_key(preset.axis);
    for (std::size_t vi = 0; vi < preset.values.size(); ++vi) {
        for (const auto& rows : rows_by_policy) {
            for (std::uint32_t t = 0; t < trials; ++t) {
                const SweepRow& row = rows[vi * trials + t];
                out << csv_row(preset.name, axis_key, row.axis_value, row.trial, row.summary)
                    << '\n';
            }
        }
    }
}

} // namespace ehlink
