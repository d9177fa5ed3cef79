#include "ehlink/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace ehlink {

double time_avg_throughput(const Trace& trace) {
    if (trace.empty()) {
        throw std::invalid_argument("time_avg_throughput: empty trace");
    }
    KahanSum sum;
    for (const SlotRecord& rec : trace) {
        sum.add(rec.rate_bits);
    }
    return sum.value() / static_cast<double>(trace.size());
}

double discharge_probability(const Trace& trace, NodeSide node) {
    if (trace.empty()) {
        throw std::invalid_argument("discharge_probability: empty trace");
    }
    std::uint64_t hits = 0;
    for (const SlotRecord& rec : trace) {
        bool discharged = node == NodeSide::Transmitter ? rec.tx_discharged : rec.rx_discharged;
        if (discharged) {
            ++hits;
        }
    }
    return static_cast<double>(hits) / static_cast<double>(trace.size());
}

namespace {

double residual_from_parts(double pi_slots_plus, double pi_slots_minus, double p_d_rx,
                           double p_o_rx, double rx_cost, double factor, double short_batch,
                           double long_batch, double mu_r) {
    // a batch ends in `factor` on-slots, so it consumes factor * rx_cost
    double per_batch = factor * rx_cost;
    double lhs = pi_slots_plus * per_batch / short_batch +
                 (pi_slots_minus - p_d_rx) * per_batch / long_batch;
    double rhs = mu_r * (1.0 - p_o_rx);
    return std::abs(lhs - rhs) / mu_r;
}

bool batched_kind(PolicyKind kind) {
    return kind != PolicyKind::Unconstrained;
}

} // namespace

double energy_balance_residual(const SimSummary& summary) {
    if (!batched_kind(summary.policy) || summary.sched_short == 0) {
        throw std::invalid_argument("energy balance residual applies to batch-policy runs only");
    }
    return residual_from_parts(summary.pi_slots_plus, summary.pi_slots_minus, summary.p_d_rx,
                               summary.p_o_rx, summary.rx_cost,
                               static_cast<double>(summary.dilation_f),
                               static_cast<double>(summary.sched_short),
                               static_cast<double>(summary.sched_long), summary.mu_r);
}

double energy_balance_residual(const Trace& trace, PolicyKind kind,
                               const RxSchedule& sched, double mu_r, double rx_cost) {
    if (!batched_kind(kind)) {
        throw std::invalid_argument("energy balance residual applies to batch-policy runs only");
    }
    if (trace.empty()) {
        throw std::invalid_argument("energy_balance_residual: empty trace");
    }
    std::uint64_t short_slots = 0;
    std::uint64_t discharges = 0;
    std::uint64_t overflows = 0;
    for (const SlotRecord& rec : trace) {
        if (rec.batch_short) {
            ++short_slots;
        }
        if (rec.rx_discharged) {
            ++discharges;
        }
        if (rec.rx_overflow > 0.0) {
            ++overflows;
        }
    }
    double n = static_cast<double>(trace.size());
    double plus = static_cast<double>(short_slots) / n;
    return residual_from_parts(plus, 1.0 - plus, static_cast<double>(discharges) / n,
                               static_cast<double>(overflows) / n, rx_cost, 1.0,
                               static_cast<double>(sched.short_batch),
                               static_cast<double>(sched.long_batch), mu_r);
}

double throughput_gap_vs_bound(const SimSummary& summary) {
    return throughput_upper_bound(summary.link()) - summary.throughput;
}

MeanStdErr trial_stats(std::span<const double> values) {
    if (values.empty()) {
        throw std::invalid_argument("trial_stats: no values");
    }
    double mean = 0.0;
    for (double v : values) {
        mean += v;
    }
    mean /= static_cast<double>(values.size());
    if (values.size() == 1) {
        return {mean, 0.0};
    }
    double ss = 0.0;
    for (double v : values) {
        ss += (v - mean) * (v - mean);
    }
    double var = ss / static_cast<double>(values.size() - 1);
    return {mean, std::sqrt(var / static_cast<double>(values.size()))};
}

} // namespace ehlink
