#include "ehlink/energy.hpp"

#include "ehlink/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ehlink {

namespace {

// Slack for accumulated floating-point noise in draw amounts; draws are
// computed from battery values so they can sit a few ulp above them.
bool exceeds(double draw, double battery) noexcept {
    return draw > battery + 1e-12 * std::max(1.0, battery);
}

} // namespace

BatteryStep step_battery(NodeEnergyState state, double harvest, double draw) {
    if (draw < 0.0 || exceeds(draw, state.battery)) {
        throw ContractViolation("battery draw " + std::to_string(draw) +
                                " exceeds available battery " + std::to_string(state.battery));
    }
    double after_draw = std::max(0.0, state.battery - draw);
    double credited = after_draw + harvest;
    double overflow = std::max(0.0, credited - state.capacity);
    state.battery = std::min(credited, state.capacity);
    return {state, overflow};
}

NodeEnergyState transfer_to_supercap(NodeEnergyState state, double amount) {
    if (amount < 0.0 || exceeds(amount, state.battery)) {
        throw ContractViolation("supercap transfer " + std::to_string(amount) +
                                " exceeds available battery " + std::to_string(state.battery));
    }
    state.battery = std::max(0.0, state.battery - amount);
    state.supercap += amount;
    return state;
}

std::pair<NodeEnergyState, double> drain_supercap(NodeEnergyState state) {
    double content = state.supercap;
    state.supercap = 0.0;
    return {state, content};
}

double EnergyLedger::relative_residual() const noexcept {
    double scale = std::max({1.0, std::abs(harvested_total), std::abs(consumed_total),
                             std::abs(end_battery), std::abs(start_battery)});
    return std::abs(residual()) / scale;
}

} // namespace ehlink
