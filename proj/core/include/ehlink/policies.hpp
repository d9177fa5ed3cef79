#pragma once

#include "ehlink/energy.hpp"
#include "ehlink/trace.hpp"

#include <algorithm>
#include <cstdint>
#include <string_view>

namespace ehlink {

enum class PolicyKind { Unconstrained, Coordinated, Dilated, Uncoordinated };

std::string_view policy_kind_name(PolicyKind kind) noexcept;

/// Symmetric per-slot drift applied by the transmitter around its mean
/// harvest rate: beta * sigma^2 * ln(capacity) / capacity. Draw above the
/// mean when the battery is at least half full, below it otherwise, so
/// the battery is steered toward half capacity.
struct DriftParams {
    double drift = 0.0;
    double beta = 2.0;
};

DriftParams make_drift_params(double beta, double sigma2, double capacity);

/// Per-slot transmitter energy budget as a function of its own battery.
inline double prescribed_draw(double battery, double capacity, double mu_t,
                              const DriftParams& d) noexcept {
    if (battery >= 0.5 * capacity) {
        return mu_t + d.drift;
    }
    return std::min(battery, mu_t - d.drift);
}

/// Receiver duty-cycle schedule for the energy-constrained regime. The
/// receiver can afford one on-slot every period = rx_cost / mu_r slots;
/// running batches of floor(period) slots drains the battery slowly
/// (negative drift), batches of ceil(period) charge it (positive drift).
struct RxSchedule {
    double period = 1.0;          // rx_cost / mu_r, in slots
    std::uint64_t short_batch = 1; // floor(period)
    std::uint64_t long_batch = 1;  // ceil(period)
    double drift_short = 0.0;      // period - short_batch, slots per batch
    double drift_long = 0.0;       // long_batch - period, slots per batch
};

/// Throws ConfigError unless 0 < mu_r and floor(rx_cost/mu_r) >= 1.
RxSchedule make_rx_schedule(double rx_cost, double mu_r);

/// Schedule stretched by an integer factor: batches of
/// floor(rx_cost*f/mu_r) or ceil(rx_cost*f/mu_r) slots with f on-slots at
/// the end of each batch. The per-batch drift stays below one slot while
/// the batch grows, so the per-slot drift shrinks roughly as 1/f.
struct DilatedSchedule {
    std::uint64_t factor = 1;
    std::uint64_t short_batch = 1;
    std::uint64_t long_batch = 1;
    double drift_short_total = 0.0;    // f*period - short_batch
    double drift_long_total = 0.0;     // long_batch - f*period
    double drift_short_per_slot = 0.0; // drift_short_total / short_batch
    double drift_long_per_slot = 0.0;  // drift_long_total / long_batch
};

DilatedSchedule make_dilated_schedule(double rx_cost, double mu_r, std::uint64_t factor);

/// Fixed repeating on-pattern for feedback-free operation: n_plus batches
/// of the short length followed by n_minus batches of the long length.
struct BatchPattern {
    std::uint32_t n_plus = 0;
    std::uint32_t n_minus = 0;
};

/// Best pattern approximation to the observed ratio of receiver-battery
/// occupancy above vs. below half capacity, with n_plus, n_minus <= 10
/// and ties broken toward the smaller pattern. Degenerate counts map to
/// (1,0) or (0,1).
BatchPattern calibrate_pattern(std::uint64_t above_half_slots, std::uint64_t below_half_slots);

/// Trace-based calibration: counts receiver-battery occupancy from a
/// completed coordinated-policy trace and fits the pattern to it.
BatchPattern calibrate_uncoordinated(const Trace& trace, double rx_half_capacity);

/// What the transmitter does in one slot. `battery_draw` goes from the
/// battery straight to the air; `accumulate` goes into the super-capacitor;
/// when `drain_supercap` is set the super-capacitor is emptied this slot
/// and its content is covered by `air_energy` (possibly over several slots
/// under dilation, see staged()).
struct TxAction {
    double accumulate = 0.0;
    bool transmit = false;
    double battery_draw = 0.0;
    bool drain_supercap = false;
    double air_energy = 0.0;
};

struct RxAction {
    bool scheduled = false; // this slot is a scheduled on-slot
    bool listen = false;    // actually on (battery covers the cost)
};

/// Greedy slot-wise policy for the regime where the receiver is not the
/// bottleneck: the transmitter spends its drift-adjusted budget every
/// slot, the receiver listens whenever it can afford to.
class UnconstrainedPolicy {
public:
    static constexpr bool kBatched = false;
    static constexpr bool kUsesFeedback = false;

    UnconstrainedPolicy(DriftParams drift, double mu_t, double rx_cost)
        : drift_(drift), mu_t_(mu_t), rx_cost_(rx_cost) {}

    TxAction tx_step(std::uint64_t /*slot*/, const NodeEnergyState& self) {
        double draw = prescribed_draw(self.battery, self.capacity, mu_t_, drift_);
        return {.accumulate = 0.0, .transmit = true, .battery_draw = draw,
                .drain_supercap = false, .air_energy = draw};
    }

    RxAction rx_step(std::uint64_t /*slot*/, const NodeEnergyState& self) {
        return {.scheduled = true, .listen = self.battery >= rx_cost_};
    }

    void on_feedback(bool) {}
    std::uint64_t last_on_slot() const { return 0; }
    std::uint64_t batch_len() const { return 1; }
    bool batch_is_short() const { return false; }
    double staged() const { return 0.0; }

private:
    DriftParams drift_;
    double mu_t_;
    double rx_cost_;
};

/// Batch policy driven by one-bit feedback. The receiver wakes at the last
/// slot of each batch; the batch length is latched at batch start from the
/// half-battery state (the receiver's own, or the transmitter's belief fed
/// by feedback), so both ends always agree on the schedule. Off-slots park
/// the transmitter's per-slot budget in the super-capacitor; the boundary
/// slot radiates the accumulated energy plus the current slot's budget.
class CoordinatedPolicy {
public:
    static constexpr bool kBatched = true;
    static constexpr bool kUsesFeedback = true;

    CoordinatedPolicy(const RxSchedule& sched, DriftParams drift, double mu_t,
                      double rx_cost, double rx_half_threshold, bool initial_above_half)
        : sched_(sched), drift_(drift), mu_t_(mu_t), rx_cost_(rx_cost),
          rx_half_(rx_half_threshold), belief_(initial_above_half) {}

    TxAction tx_step(std::uint64_t slot, const NodeEnergyState& self) {
        maybe_start_batch(slot, belief_);
        double draw = prescribed_draw(self.battery, self.capacity, mu_t_, drift_);
        if (slot == n_on_ + batch_len_) {
            n_on_ = slot;
            return {.accumulate = 0.0, .transmit = true, .battery_draw = draw,
                    .drain_supercap = true, .air_energy = self.supercap + draw};
        }
        return {.accumulate = draw};
    }

    RxAction rx_step(std::uint64_t slot, const NodeEnergyState& self) {
        maybe_start_batch(slot, self.battery >= rx_half_);
        if (slot == n_on_ + batch_len_) {
            n_on_ = slot;
            return {.scheduled = true, .listen = self.battery >= rx_cost_};
        }
        return {};
    }

    void on_feedback(bool above_half) { belief_ = above_half; }
    std::uint64_t last_on_slot() const { return n_on_; }
    std::uint64_t batch_len() const { return batch_len_; }
    bool batch_is_short() const { return batch_short_; }
    double staged() const { return 0.0; }

private:
    void maybe_start_batch(std::uint64_t slot, bool above_half) {
        if (slot == n_on_ + 1) {
            batch_short_ = above_half;
            batch_len_ = above_half ? sched_.short_batch : sched_.long_batch;
        }
    }

    RxSchedule sched_;
    DriftParams drift_;
    double mu_t_;
    double rx_cost_;
    double rx_half_;
    bool belief_;
    bool batch_short_ = true;
    std::uint64_t batch_len_ = 1;
    std::uint64_t n_on_ = 0;
};

/// Time-dilated batch policy. Batches are f times longer and end in f
/// consecutive on-slots. At the start of the on phase the super-capacitor
/// is drained and, together with f slots' worth of the current budget
/// (capped at the battery content), split equally across the f on-slots.
/// With factor 1 this reduces slot-for-slot to CoordinatedPolicy.
class DilatedPolicy {
public:
    static constexpr bool kBatched = true;
    static constexpr bool kUsesFeedback = true;

    DilatedPolicy(const DilatedSchedule& sched, DriftParams drift, double mu_t,
                  double rx_cost, double rx_half_threshold, bool initial_above_half)
        : sched_(sched), drift_(drift), mu_t_(mu_t), rx_cost_(rx_cost),
          rx_half_(rx_half_threshold), belief_(initial_above_half),
          released_(sched.factor) {}

    TxAction tx_step(std::uint64_t slot, const NodeEnergyState& self) {
        maybe_start_batch(slot, belief_);
        std::uint64_t phase_start = n_on_ + batch_len_ - sched_.factor + 1;
        if (slot < phase_start) {
            return {.accumulate = prescribed_draw(self.battery, self.capacity, mu_t_, drift_)};
        }
        TxAction action;
        action.transmit = true;
        if (slot == phase_start) {
            double draw = prescribed_draw(self.battery, self.capacity, mu_t_, drift_);
            double f = static_cast<double>(sched_.factor);
            double battery_budget = std::min(f * draw, self.battery);
            stage_total_ = self.supercap;
            released_ = 0;
            per_slot_draw_ = battery_budget / f;
            per_slot_air_ = (stage_total_ + battery_budget) / f;
            action.drain_supercap = true;
        }
        action.battery_draw = per_slot_draw_;
        action.air_energy = per_slot_air_;
        ++released_;
        if (slot == n_on_ + batch_len_) {
            n_on_ = slot;
        }
        return action;
    }

    RxAction rx_step(std::uint64_t slot, const NodeEnergyState& self) {
        maybe_start_batch(slot, self.battery >= rx_half_);
        std::uint64_t phase_start = n_on_ + batch_len_ - sched_.factor + 1;
        RxAction action;
        if (slot >= phase_start) {
            action.scheduled = true;
            action.listen = self.battery >= rx_cost_;
            if (slot == n_on_ + batch_len_) {
                n_on_ = slot;
            }
        }
        return action;
    }

    void on_feedback(bool above_half) { belief_ = above_half; }
    std::uint64_t last_on_slot() const { return n_on_; }
    std::uint64_t batch_len() const { return batch_len_; }
    bool batch_is_short() const { return batch_short_; }

    /// Energy drained from the super-capacitor but not yet radiated
    /// (mid on-phase). Counted with the super-capacitor in the ledger.
    double staged() const {
        if (released_ >= sched_.factor) {
            return 0.0;
        }
        return stage_total_ * static_cast<double>(sched_.factor - released_) /
               static_cast<double>(sched_.factor);
    }

private:
    void maybe_start_batch(std::uint64_t slot, bool above_half) {
        if (slot == n_on_ + 1) {
            batch_short_ = above_half;
            batch_len_ = above_half ? sched_.short_batch : sched_.long_batch;
        }
    }

    DilatedSchedule sched_;
    DriftParams drift_;
    double mu_t_;
    double rx_cost_;
    double rx_half_;
    bool belief_;
    bool batch_short_ = true;
    std::uint64_t batch_len_ = 1;
    std::uint64_t n_on_ = 0;
    double stage_total_ = 0.0;
    double per_slot_draw_ = 0.0;
    double per_slot_air_ = 0.0;
    std::uint64_t released_ = 0;
};

/// Feedback-free batch policy: both ends step through the same fixed
/// repeating pattern of short and long batches; the receiver wakes at
/// each batch's last slot when it can afford to.
class UncoordinatedPolicy {
public:
    static constexpr bool kBatched = true;
    static constexpr bool kUsesFeedback = false;

    UncoordinatedPolicy(const RxSchedule& sched, DriftParams drift, double mu_t,
                        double rx_cost, BatchPattern pattern)
        : sched_(sched), drift_(drift), mu_t_(mu_t), rx_cost_(rx_cost), pattern_(pattern) {}

    TxAction tx_step(std::uint64_t slot, const NodeEnergyState& self) {
        maybe_start_batch(slot);
        double draw = prescribed_draw(self.battery, self.capacity, mu_t_, drift_);
        if (slot == n_on_ + batch_len_) {
            finish_batch(slot);
            return {.accumulate = 0.0, .transmit = true, .battery_draw = draw,
                    .drain_supercap = true, .air_energy = self.supercap + draw};
        }
        return {.accumulate = draw};
    }

    RxAction rx_step(std::uint64_t slot, const NodeEnergyState& self) {
        maybe_start_batch(slot);
        if (slot == n_on_ + batch_len_) {
            finish_batch(slot);
            return {.scheduled = true, .listen = self.battery >= rx_cost_};
        }
        return {};
    }

    void on_feedback(bool) {}
    std::uint64_t last_on_slot() const { return n_on_; }
    std::uint64_t batch_len() const { return batch_len_; }
    bool batch_is_short() const { return batch_short_; }
    double staged() const { return 0.0; }

private:
    void maybe_start_batch(std::uint64_t slot) {
        if (slot == n_on_ + 1) {
            batch_short_ = cursor_ < pattern_.n_plus;
            batch_len_ = batch_short_ ? sched_.short_batch : sched_.long_batch;
        }
    }

    void finish_batch(std::uint64_t slot) {
        n_on_ = slot;
        cursor_ = (cursor_ + 1) % (pattern_.n_plus + pattern_.n_minus);
    }

    RxSchedule sched_;
    DriftParams drift_;
    double mu_t_;
    double rx_cost_;
    BatchPattern pattern_;
    std::uint32_t cursor_ = 0;
    bool batch_short_ = true;
    std::uint64_t batch_len_ = 1;
    std::uint64_t n_on_ = 0;
};

} // namespace ehlink
