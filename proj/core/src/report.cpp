#include "ehlink/report.hpp"

#include "ehlink/bounds.hpp"

#include <cinttypes>
#include <cstdio>

namespace ehlink {

namespace {

void append_num(std::string& out, double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    out += buf;
    out += ',';
}

void append_u64(std::string& out, std::uint64_t value) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%" PRIu64, value);
    out += buf;
    out += ',';
}

} // namespace

std::string csv_header() {
    return "preset,axis,axis_value,policy,trial,seed,horizon,slots_measured,"
           "throughput_bits_per_slot,throughput_full_bits_per_slot,"
           "upper_bound_bits_per_slot,gap_bits_per_slot,"
           "p_d_tx,p_d_rx,p_o_tx,p_o_rx,feedback_bits,feedback_rate,"
           "attempts,rx_missed_attempts,pi_on_plus,pi_on_minus,"
           "pi_slots_plus,pi_slots_minus,pi_empty,"
           "pattern_n_plus,pattern_n_minus,dilation_f,sched_short,sched_long,"
           "max_supercap,"
           "tx_harvested,tx_consumed,tx_overflow,tx_end_battery,tx_end_supercap,"
           "tx_ledger_residual_rel,"
           "rx_harvested,rx_consumed,rx_overflow,rx_end_battery,rx_ledger_residual_rel,"
           "rx_slots_above_half,rx_slots_below_half";
}

std::string csv_row(std::string_view preset, std::string_view axis_key, double axis_value,
                    std::uint32_t trial, const SimSummary& s) {
    std::string out;
    out.reserve(640);
    out += preset;
    out += ',';
    out += axis_key;
    out += ',';
    append_num(out, axis_value);
    out += policy_kind_name(s.policy);
    out += ',';
    append_u64(out, trial);
    append_u64(out, s.seed);
    append_u64(out, s.horizon);
    append_u64(out, s.slots_measured);
    append_num(out, s.throughput);
    append_num(out, s.throughput_full);
    double bound = throughput_upper_bound(s.link());
    append_num(out, bound);
    append_num(out, bound - s.throughput);
    append_num(out, s.p_d_tx);
    append_num(out, s.p_d_rx);
    append_num(out, s.p_o_tx);
    append_num(out, s.p_o_rx);
    append_u64(out, s.feedback_bits);
    append_num(out, s.feedback_rate);
    append_u64(out, s.attempts);
    append_u64(out, s.rx_missed_attempts);
    append_num(out, s.pi_on_plus);
    append_num(out, s.pi_on_minus);
    append_num(out, s.pi_slots_plus);
    append_num(out, s.pi_slots_minus);
    append_num(out, s.pi_empty);
    append_u64(out, s.pattern.n_plus);
    append_u64(out, s.pattern.n_minus);
    append_u64(out, s.dilation_f);
    append_u64(out, s.sched_short);
    append_u64(out, s.sched_long);
    append_num(out, s.max_supercap);
    append_num(out, s.tx_ledger.harvested_total);
    append_num(out, s.tx_ledger.consumed_total);
    append_num(out, s.tx_ledger.overflow_total);
    append_num(out, s.tx_ledger.end_battery);
    append_num(out, s.tx_ledger.end_supercap);
    append_num(out, s.tx_ledger.relative_residual());
    append_num(out, s.rx_ledger.harvested_total);
    append_num(out, s.rx_ledger.consumed_total);
    append_num(out, s.rx_ledger.overflow_total);
    append_num(out, s.rx_ledger.end_battery);
    append_num(out, s.rx_ledger.relative_residual());
    append_u64(out, s.rx_slots_above_half);
    append_u64(out, s.rx_slots_below_half);
    if (!out.empty() && out.back() == ',') {
        out.pop_back();
    }
    return out;
}

void write_rows(std::ostream& out, std::string_view preset, std::string_view axis_key,
                const std::vector<SweepRow>& rows) {
    for (const SweepRow& row : rows) {
        out << csv_row(preset, axis_key, row.axis_value, row.trial, row.summary) << '\n';
    }
}

std::string trace_csv_header() {
    return "slot,tx_arrival,rx_arrival,tx_draw,rx_draw,tx_transmitted,tx_power,"
           "rx_on,rx_scheduled,batch_short,rate_bits,feedback,"
           "tx_battery_after,tx_supercap_after,rx_battery_after,tx_discharged,rx_discharged,"
           "tx_overflow,rx_overflow";
}

void write_trace(std::ostream& out, const Trace& trace) {
    out << trace_csv_header() << '\n';
    std::string line;
    for (const SlotRecord& r : trace) {
        line.clear();
        append_u64(line, r.slot);
        append_num(line, r.tx_arrival);
        append_num(line, r.rx_arrival);
        append_num(line, r.tx_draw);
        append_num(line, r.rx_draw);
        append_u64(line, r.tx_transmitted ? 1 : 0);
        append_num(line, r.tx_power);
        append_u64(line, r.rx_on ? 1 : 0);
        append_u64(line, r.rx_scheduled ? 1 : 0);
        append_u64(line, r.batch_short ? 1 : 0);
        append_num(line, r.rate_bits);
        append_u64(line, r.feedback ? 1 : 0);
        append_num(line, r.tx_battery_after);
        append_num(line, r.tx_supercap_after);
        append_num(line, r.rx_battery_after);
        append_u64(line, r.tx_discharged ? 1 : 0);
        append_u64(line, r.rx_discharged ? 1 : 0);
        append_num(line, r.tx_overflow);
        append_num(line, r.rx_overflow);
        if (!line.empty() && line.back() == ',') {
            line.pop_back();
        }
        out << line << '\n';
    }
}

} // namespace ehlink
