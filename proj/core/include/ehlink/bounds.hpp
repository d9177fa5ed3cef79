#pragma once

#include <span>

namespace ehlink {

/// Mean link parameters: mean harvest rates at both ends and the fixed
/// per-slot listening cost R of the receiver.
struct LinkParams {
    double mu_t = 0.0;    // mean tx harvest, energy units / slot
    double mu_r = 0.0;    // mean rx harvest, energy units / slot
    double rx_cost = 0.0; // R, energy units per on-slot
};

/// Closed-form upper bound on the long-term time-averaged throughput of
/// the link, in bits/slot (log base 2 throughout).
///
///   mu_r >= R : log2(1 + mu_t)                    (receiver never limits)
///   mu_r <  R : (mu_r/R) * log2(1 + R*mu_t/mu_r)  (receiver duty-cycled)
///
/// The bound is independent of battery capacities. mu_r == R is routed to
/// the first branch; the branches agree there. mu_r == 0 yields 0.
double throughput_upper_bound(const LinkParams& params);

/// Finite-horizon throughput of the relaxed system with infinite batteries
/// and all N slots' energy available upfront: the receiver affords
/// N' = floor(total_rx/R) on-slots and the transmit energy is spread
/// equally over min(N', N) slots. Converges to throughput_upper_bound as
/// N grows; used as an independent check of the closed form.
/// Throws std::invalid_argument for empty or mismatched sequences.
double genie_throughput_oracle(const LinkParams& params,
                               std::span<const double> tx_arrivals,
                               std::span<const double> rx_arrivals);

} // namespace ehlink
