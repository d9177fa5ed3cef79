#pragma once

#include "ehlink/bounds.hpp"
#include "ehlink/energy.hpp"
#include "ehlink/policies.hpp"
#include "ehlink/trace.hpp"

#include <cstdint>
#include <span>

namespace ehlink {

enum class NodeSide { Transmitter, Receiver };

/// Per-run summary. Rate statistics (throughput, probabilities, fractions)
/// are computed over the post-warm-up window; throughput_full, the
/// feedback count and the energy ledgers cover the whole horizon.
struct SimSummary {
    // configuration echo
    PolicyKind policy = PolicyKind::Unconstrained;
    std::uint64_t horizon = 0;
    std::uint64_t seed = 0;
    double mu_t = 0.0;
    double mu_r = 0.0;
    double rx_cost = 0.0;
    double tx_capacity = 0.0;
    double rx_capacity = 0.0;
    std::uint64_t dilation_f = 1;
    BatchPattern pattern{0, 0};
    std::uint64_t sched_short = 0; // batch lengths; 0 when the policy is not batched
    std::uint64_t sched_long = 0;

    // measured window
    std::uint64_t warmup_slots = 0;
    std::uint64_t slots_measured = 0;
    double throughput = 0.0;      // bits/slot, post-warm-up
    double throughput_full = 0.0; // bits/slot, whole horizon
    double p_d_tx = 0.0;          // fraction of slots ending with an empty battery
    double p_d_rx = 0.0;
    double p_o_tx = 0.0;          // fraction of slots with clipped harvest
    double p_o_rx = 0.0;
    std::uint64_t feedback_bits = 0;
    double feedback_rate = 0.0;   // bits per slot over the whole horizon
    std::uint64_t attempts = 0;   // completed batches (batch policies)
    std::uint64_t rx_missed_attempts = 0; // scheduled on-slots skipped, battery < rx_cost
    double pi_on_plus = 0.0;      // fraction of attempts after a short batch
    double pi_on_minus = 0.0;
    double pi_slots_plus = 0.0;   // fraction of slots spent in short batches
    double pi_slots_minus = 0.0;
    double pi_empty = 0.0;        // slots with an empty battery at either node
    std::uint64_t rx_slots_above_half = 0; // start-of-slot occupancy counts
    std::uint64_t rx_slots_below_half = 0;
    double max_supercap = 0.0;
    EnergyLedger tx_ledger;
    EnergyLedger rx_ledger;

    LinkParams link() const noexcept { return {mu_t, mu_r, rx_cost}; }
};

/// Mean rate over a trace: (1/N) sum of per-slot achieved bits.
double time_avg_throughput(const Trace& trace);

/// Fraction of slots whose end-of-slot battery is exactly zero.
double discharge_probability(const Trace& trace, NodeSide node);

/// Relative residual of the receiver energy-conservation identity
///   pi_slots_plus*R/short + (pi_slots_minus - p_d_rx)*R/long = mu_r*(1 - p_o_rx)
/// evaluated with empirical quantities. Small at stationarity on long
/// coordinated runs; meaningless for unbatched policies (throws
/// std::invalid_argument).
double energy_balance_residual(const SimSummary& summary);
double energy_balance_residual(const Trace& trace, PolicyKind kind,
                               const RxSchedule& sched, double mu_r, double rx_cost);

/// Upper bound minus achieved throughput, in bits/slot.
double throughput_gap_vs_bound(const SimSummary& summary);

struct MeanStdErr {
    double mean = 0.0;
    double std_err = 0.0;
};

/// Sample mean and standard error across independent trials.
MeanStdErr trial_stats(std::span<const double> values);

} // namespace ehlink
