#pragma once

#include <cstdint>
#include <vector>

namespace ehlink {

/// Full per-slot log for one run; only populated in full-trace mode.
struct SlotRecord {
    std::uint64_t slot = 0;   // 1-based
    double tx_arrival = 0.0;
    double rx_arrival = 0.0;
    double tx_draw = 0.0;     // total battery debit at the transmitter
    double rx_draw = 0.0;     // 0 or rx_cost
    bool tx_transmitted = false;
    double tx_power = 0.0;    // energy radiated this slot
    bool rx_on = false;
    bool rx_scheduled = false;
    bool batch_short = false; // type of the batch this slot belongs to
    double rate_bits = 0.0;   // log2(1 + tx_power) when both ends are on
    bool feedback = false;
    double tx_battery_after = 0.0;
    double tx_supercap_after = 0.0;
    double rx_battery_after = 0.0;
    bool tx_discharged = false; // battery exactly 0 after the slot
    bool rx_discharged = false;
    double tx_overflow = 0.0;
    double rx_overflow = 0.0;
};

using Trace = std::vector<SlotRecord>;

} // namespace ehlink
