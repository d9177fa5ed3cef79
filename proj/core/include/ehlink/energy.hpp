#pragma once

#include <utility>

namespace ehlink {

/// Battery (and, at the transmitter, super-capacitor) content of one node.
/// Invariants: 0 <= battery <= capacity at every slot boundary; the
/// super-capacitor holds energy budgeted for transmission and is emptied
/// in any slot where data is sent.
struct NodeEnergyState {
    double battery = 0.0;
    double capacity = 0.0;
    double supercap = 0.0;
};

struct BatteryStep {
    NodeEnergyState state;
    double overflow = 0.0;
};

/// One slot of battery evolution: the draw is debited from the battery
/// available at slot start, the slot's harvest is credited, then the
/// result is clipped to [0, capacity]. Energy clipped at the top is
/// returned as overflow.
/// Throws ContractViolation if draw exceeds the available battery.
BatteryStep step_battery(NodeEnergyState state, double harvest, double draw);

/// Moves `amount` from the battery into the super-capacitor. Total energy
/// is conserved exactly. Throws ContractViolation if amount > battery.
NodeEnergyState transfer_to_supercap(NodeEnergyState state, double amount);

/// Empties the super-capacitor, returning its content.
std::pair<NodeEnergyState, double> drain_supercap(NodeEnergyState state);

/// Whole-run energy conservation record for one node. The identity
///   harvested = consumed + overflow + (end_battery - start_battery) + end_supercap
/// holds to a relative tolerance of 1e-9 for every run.
struct EnergyLedger {
    double harvested_total = 0.0;
    double consumed_total = 0.0;
    double overflow_total = 0.0;
    double start_battery = 0.0;
    double end_battery = 0.0;
    double end_supercap = 0.0;

    double residual() const noexcept {
        return harvested_total - consumed_total - overflow_total -
               (end_battery - start_battery) - end_supercap;
    }

    /// Residual scaled by the magnitude of the ledger terms.
    double relative_residual() const noexcept;
};

/// Compensated (Kahan) accumulator; keeps long-run ledgers and throughput
/// sums exact enough for the 1e-9 conservation identity over 1e7 slots.
class KahanSum {
public:
    void add(double x) noexcept {
        double y = x - carry_;
        double t = sum_ + y;
        carry_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const noexcept { return sum_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

} // namespace ehlink
