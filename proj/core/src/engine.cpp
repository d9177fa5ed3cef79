#include "ehlink/engine.hpp"

#include "ehlink/errors.hpp"
#include "ehlink/rng.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

namespace ehlink {

namespace {

bool is_batched(PolicyKind kind) {
    return kind != PolicyKind::Unconstrained;
}

struct WindowCounters {
    KahanSum rate_full;
    KahanSum rate_window;
    std::uint64_t tx_discharge = 0;
    std::uint64_t rx_discharge = 0;
    std::uint64_t tx_overflow_events = 0;
    std::uint64_t rx_overflow_events = 0;
    std::uint64_t either_empty = 0;
    std::uint64_t attempts = 0;
    std::uint64_t attempts_short = 0;
    std::uint64_t rx_missed = 0;
    std::uint64_t slots_short = 0;
    std::uint64_t slots_long = 0;
    std::uint64_t rx_above_half = 0;
    std::uint64_t rx_below_half = 0;
    std::uint64_t feedback_bits = 0;
};

template <class Policy>
RunResult run_impl(const SimConfig& cfg, Policy tx_policy, Policy rx_policy,
                   std::uint64_t sched_short, std::uint64_t sched_long) {
    const std::uint64_t horizon = cfg.horizon;
    const std::uint64_t warmup = horizon / 100;
    const double rx_half = 0.5 * cfg.rx_capacity;

    RandomStream tx_rng = node_stream(cfg.seed, kTxNode);
    RandomStream rx_rng = node_stream(cfg.seed, kRxNode);

    NodeEnergyState tx{cfg.tx_initial_fraction * cfg.tx_capacity, cfg.tx_capacity, 0.0};
    NodeEnergyState rx{cfg.rx_initial_fraction * cfg.rx_capacity, cfg.rx_capacity, 0.0};

    EnergyLedger tx_ledger;
    EnergyLedger rx_ledger;
    tx_ledger.start_battery = tx.battery;
    rx_ledger.start_battery = rx.battery;
    KahanSum tx_harvested, tx_consumed, tx_overflowed;
    KahanSum rx_harvested, rx_consumed, rx_overflowed;

    WindowCounters w;
    double max_supercap = 0.0;

    Trace trace;
    const bool record = cfg.record_mode == RecordMode::FullTrace;
    if (record) {
        trace.reserve(horizon);
    }

    for (std::uint64_t n = 1; n <= horizon; ++n) {
        const bool measured = n > warmup;
        const double e_t = cfg.tx_harvest.sample(tx_rng);
        const double e_r = cfg.rx_harvest.sample(rx_rng);
        const bool rx_above_before = rx.battery >= rx_half;
        if (measured) {
            (rx_above_before ? w.rx_above_half : w.rx_below_half)++;
        }

        TxAction a = tx_policy.tx_step(n, tx);
        RxAction b = rx_policy.rx_step(n, rx);
        if constexpr (Policy::kBatched) {
            if (tx_policy.last_on_slot() != rx_policy.last_on_slot() ||
                tx_policy.batch_len() != rx_policy.batch_len()) {
                throw ContractViolation(
                    "schedule desynchronization between transmitter and receiver at slot " +
                    std::to_string(n));
            }
        }
        if (a.transmit != b.scheduled) {
            throw ContractViolation("transmit/on-slot mismatch at slot " + std::to_string(n));
        }

        double tx_over = 0.0;
        double rx_over = 0.0;
        double rx_draw = b.listen ? cfg.rx_cost : 0.0;
        try {
            if (a.accumulate != 0.0) {
                tx = transfer_to_supercap(tx, a.accumulate);
            }
            if (a.drain_supercap) {
                tx = drain_supercap(tx).first;
            }
            BatteryStep ts = step_battery(tx, e_t, a.battery_draw);
            tx = ts.state;
            tx_over = ts.overflow;
            BatteryStep rs = step_battery(rx, e_r, rx_draw);
            rx = rs.state;
            rx_over = rs.overflow;
        } catch (const ContractViolation& e) {
            throw ContractViolation(std::string(policy_kind_name(cfg.policy.kind)) +
                                    " policy, slot " + std::to_string(n) + ": " + e.what());
        }

        const bool transmitted = a.transmit && a.air_energy > 0.0;
        const double rate = (transmitted && b.listen) ? std::log2(1.0 + a.air_energy) : 0.0;

        tx_harvested.add(e_t);
        rx_harvested.add(e_r);
        if (transmitted) {
            tx_consumed.add(a.air_energy);
        }
        if (rx_draw != 0.0) {
            rx_consumed.add(rx_draw);
        }
        tx_overflowed.add(tx_over);
        rx_overflowed.add(rx_over);
        w.rate_full.add(rate);
        max_supercap = std::max(max_supercap, tx.supercap);

        bool feedback = false;
        if constexpr (Policy::kUsesFeedback) {
            const bool rx_above_after = rx.battery >= rx_half;
            if (rx_above_after != rx_above_before) {
                feedback = true;
                ++w.feedback_bits;
                tx_policy.on_feedback(rx_above_after);
            }
        }

        if (measured) {
            w.rate_window.add(rate);
            if (tx.battery == 0.0) {
                ++w.tx_discharge;
            }
            if (rx.battery == 0.0) {
                ++w.rx_discharge;
            }
            if (tx.battery == 0.0 || rx.battery == 0.0) {
                ++w.either_empty;
            }
            if (tx_over > 0.0) {
                ++w.tx_overflow_events;
            }
            if (rx_over > 0.0) {
                ++w.rx_overflow_events;
            }
            if (b.scheduled && !b.listen) {
                ++w.rx_missed;
            }
            if constexpr (Policy::kBatched) {
                (tx_policy.batch_is_short() ? w.slots_short : w.slots_long)++;
                if (tx_policy.last_on_slot() == n) {
                    ++w.attempts;
                    if (tx_policy.batch_is_short()) {
                        ++w.attempts_short;
                    }
                }
            }
        }

        if (record) {
            SlotRecord rec;
            rec.slot = n;
            rec.tx_arrival = e_t;
            rec.rx_arrival = e_r;
            rec.tx_draw = a.accumulate + a.battery_draw;
            rec.rx_draw = rx_draw;
            rec.tx_transmitted = transmitted;
            rec.tx_power = transmitted ? a.air_energy : 0.0;
            rec.rx_on = b.listen;
            rec.rx_scheduled = b.scheduled;
            rec.batch_short = Policy::kBatched ? tx_policy.batch_is_short() : false;
            rec.rate_bits = rate;
            rec.feedback = feedback;
            rec.tx_battery_after = tx.battery;
            rec.tx_supercap_after = tx.supercap;
            rec.rx_battery_after = rx.battery;
            rec.tx_discharged = tx.battery == 0.0;
            rec.rx_discharged = rx.battery == 0.0;
            rec.tx_overflow = tx_over;
            rec.rx_overflow = rx_over;
            trace.push_back(rec);
        }
    }

    tx_ledger.harvested_total = tx_harvested.value();
    tx_ledger.consumed_total = tx_consumed.value();
    tx_ledger.overflow_total = tx_overflowed.value();
    tx_ledger.end_battery = tx.battery;
    tx_ledger.end_supercap = tx.supercap + tx_policy.staged();
    rx_ledger.harvested_total = rx_harvested.value();
    rx_ledger.consumed_total = rx_consumed.value();
    rx_ledger.overflow_total = rx_overflowed.value();
    rx_ledger.end_battery = rx.battery;
    rx_ledger.end_supercap = 0.0;

    const std::uint64_t window = horizon - warmup;
    SimSummary s;
    s.policy = cfg.policy.kind;
    s.horizon = horizon;
    s.seed = cfg.seed;
    s.mu_t = cfg.tx_harvest.mean();
    s.mu_r = cfg.rx_harvest.mean();
    s.rx_cost = cfg.rx_cost;
    s.tx_capacity = cfg.tx_capacity;
    s.rx_capacity = cfg.rx_capacity;
    s.dilation_f = cfg.policy.kind == PolicyKind::Dilated ? cfg.policy.dilation_f : 1;
    s.pattern = cfg.policy.pattern.value_or(BatchPattern{0, 0});
    s.sched_short = sched_short;
    s.sched_long = sched_long;
    s.warmup_slots = warmup;
    s.slots_measured = window;
    s.throughput = w.rate_window.value() / static_cast<double>(window);
    s.throughput_full = w.rate_full.value() / static_cast<double>(horizon);
    auto frac = [window](std::uint64_t count) {
        return static_cast<double>(count) / static_cast<double>(window);
    };
    s.p_d_tx = frac(w.tx_discharge);
    s.p_d_rx = frac(w.rx_discharge);
    s.p_o_tx = frac(w.tx_overflow_events);
    s.p_o_rx = frac(w.rx_overflow_events);
    s.feedback_bits = w.feedback_bits;
    s.feedback_rate = static_cast<double>(w.feedback_bits) / static_cast<double>(horizon);
    s.attempts = w.attempts;
    s.rx_missed_attempts = w.rx_missed;
    if (w.attempts > 0) {
        s.pi_on_plus = static_cast<double>(w.attempts_short) / static_cast<double>(w.attempts);
        s.pi_on_minus = 1.0 - s.pi_on_plus;
    }
    if (w.slots_short + w.slots_long > 0) {
        s.pi_slots_plus = static_cast<double>(w.slots_short) /
                          static_cast<double>(w.slots_short + w.slots_long);
        s.pi_slots_minus = 1.0 - s.pi_slots_plus;
    }
    s.pi_empty = frac(w.either_empty);
    s.rx_slots_above_half = w.rx_above_half;
    s.rx_slots_below_half = w.rx_below_half;
    s.max_supercap = max_supercap;
    s.tx_ledger = tx_ledger;
    s.rx_ledger = rx_ledger;

    RunResult result;
    result.summary = s;
    if (record) {
        result.trace = std::move(trace);
    }
    return result;
}

} // namespace

std::vector<std::string> validate(const SimConfig& cfg) {
    std::vector<std::string> v;
    if (cfg.horizon < 1) {
        v.push_back("sim.horizon: must be >= 1");
    }
    if (cfg.record_mode == RecordMode::FullTrace && cfg.horizon > kMaxTraceSlots) {
        v.push_back("sim.record: full-trace mode is limited to " +
                    std::to_string(kMaxTraceSlots) + " slots");
    }
    if (!(cfg.rx_cost > 0.0)) {
        v.push_back("link.rx_cost: must be > 0");
    }
    if (!(cfg.tx_capacity > 0.0)) {
        v.push_back("battery.tx.capacity: must be > 0");
    }
    if (!(cfg.rx_capacity > 0.0)) {
        v.push_back("battery.rx.capacity: must be > 0");
    }
    if (!(cfg.tx_initial_fraction >= 0.0 && cfg.tx_initial_fraction <= 1.0)) {
        v.push_back("battery.tx.initial_fraction: must be in [0,1]");
    }
    if (!(cfg.rx_initial_fraction >= 0.0 && cfg.rx_initial_fraction <= 1.0)) {
        v.push_back("battery.rx.initial_fraction: must be in [0,1]");
    }
    if (cfg.rx_capacity < 2.0 * cfg.rx_cost) {
        v.push_back("battery.rx.capacity: must be >= 2 * link.rx_cost");
    }
    if (!(cfg.policy.beta_t >= 2.0)) {
        v.push_back("policy.beta_t: must be >= 2");
    }
    if (cfg.policy.dilation_f < 1) {
        v.push_back("policy.dilation_f: must be >= 1");
    }
    const double mu_t = cfg.tx_harvest.mean();
    if (cfg.tx_capacity > 0.0) {
        DriftParams drift =
            make_drift_params(cfg.policy.beta_t, cfg.tx_harvest.asymptotic_variance(),
                              cfg.tx_capacity);
        if (mu_t > 0.0 && drift.drift >= mu_t) {
            v.push_back("policy.beta_t: per-slot tx drift " + std::to_string(drift.drift) +
                        " must stay below the mean tx harvest rate " + std::to_string(mu_t));
        }
        if (mu_t + drift.drift > 0.5 * cfg.tx_capacity) {
            v.push_back("battery.tx.capacity: high-battery draw mu_t + drift exceeds capacity/2");
        }
    }
    if (is_batched(cfg.policy.kind)) {
        const double mu_r = cfg.rx_harvest.mean();
        if (!(mu_r > 0.0)) {
            v.push_back("harvest.rx.prob: batch policies need a positive rx harvest rate");
        } else if (mu_r > cfg.rx_cost) {
            v.push_back("harvest.rx.prob: batch policies require mu_r <= link.rx_cost");
        }
    }
    if (cfg.policy.kind == PolicyKind::Uncoordinated) {
        if (!cfg.policy.pattern) {
            v.push_back("policy.pattern: required for uncoordinated runs (use calibrate)");
        } else if (cfg.policy.pattern->n_plus + cfg.policy.pattern->n_minus < 1) {
            v.push_back("policy.pattern: n_plus + n_minus must be >= 1");
        }
    }
    return v;
}

RunResult run_link(const SimConfig& cfg) {
    std::vector<std::string> violations = validate(cfg);
    if (!violations.empty()) {
        std::ostringstream oss;
        oss << "invalid simulation config:";
        for (const std::string& msg : violations) {
            oss << "\n  - " << msg;
        }
        throw ConfigError(oss.str());
    }

    const double mu_t = cfg.tx_harvest.mean();
    const DriftParams drift = make_drift_params(
        cfg.policy.beta_t, cfg.tx_harvest.asymptotic_variance(), cfg.tx_capacity);
    const bool init_above = cfg.rx_initial_fraction * cfg.rx_capacity >= 0.5 * cfg.rx_capacity;

    switch (cfg.policy.kind) {
        case PolicyKind::Unconstrained: {
            UnconstrainedPolicy p(drift, mu_t, cfg.rx_cost);
            return run_impl(cfg, p, p, 0, 0);
        }
        case PolicyKind::Coordinated: {
            RxSchedule sched = make_rx_schedule(cfg.rx_cost, cfg.rx_harvest.mean());
            CoordinatedPolicy p(sched, drift, mu_t, cfg.rx_cost, 0.5 * cfg.rx_capacity,
                                init_above);
            return run_impl(cfg, p, p, sched.short_batch, sched.long_batch);
        }
        case PolicyKind::Dilated: {
            DilatedSchedule sched =
                make_dilated_schedule(cfg.rx_cost, cfg.rx_harvest.mean(), cfg.policy.dilation_f);
            DilatedPolicy p(sched, drift, mu_t, cfg.rx_cost, 0.5 * cfg.rx_capacity, init_above);
            return run_impl(cfg, p, p, sched.short_batch, sched.long_batch);
        }
        case PolicyKind::Uncoordinated: {
            RxSchedule sched = make_rx_schedule(cfg.rx_cost, cfg.rx_harvest.mean());
            UncoordinatedPolicy p(sched, drift, mu_t, cfg.rx_cost, *cfg.policy.pattern);
            return run_impl(cfg, p, p, sched.short_batch, sched.long_batch);
        }
    }
    throw ConfigError("unknown policy kind");
}

std::optional<SweepAxis> sweep_axis_from_key(std::string_view key) {
    if (key == "harvest.tx.prob") return SweepAxis::TxProb;
    if (key == "harvest.rx.prob") return SweepAxis::RxProb;
    if (key == "battery.tx.capacity") return SweepAxis::TxCapacity;
    if (key == "battery.rx.capacity") return SweepAxis::RxCapacity;
    if (key == "battery.capacity") return SweepAxis::BothCapacities;
    if (key == "policy.dilation_f") return SweepAxis::DilationF;
    return std::nullopt;
}

std::string_view sweep_axis_key(SweepAxis axis) noexcept {
    switch (axis) {
        case SweepAxis::TxProb: return "harvest.tx.prob";
        case SweepAxis::RxProb: return "harvest.rx.prob";
        case SweepAxis::TxCapacity: return "battery.tx.capacity";
        case SweepAxis::RxCapacity: return "battery.rx.capacity";
        case SweepAxis::BothCapacities: return "battery.capacity";
        case SweepAxis::DilationF: return "policy.dilation_f";
    }
    return "?";
}

void apply_sweep_value(SimConfig& cfg, SweepAxis axis, double value) {
    switch (axis) {
        case SweepAxis::TxProb:
            cfg.tx_harvest = HarvestProcess::bernoulli(value, cfg.tx_harvest.amount());
            return;
        case SweepAxis::RxProb:
            cfg.rx_harvest = HarvestProcess::bernoulli(value, cfg.rx_harvest.amount());
            return;
        case SweepAxis::TxCapacity:
            cfg.tx_capacity = value;
            return;
        case SweepAxis::RxCapacity:
            cfg.rx_capacity = value;
            return;
        case SweepAxis::BothCapacities:
            cfg.tx_capacity = value;
            cfg.rx_capacity = value;
            return;
        case SweepAxis::DilationF: {
            double rounded = std::nearbyint(value);
            if (value != rounded || value < 1.0) {
                throw ConfigError("policy.dilation_f: sweep values must be integers >= 1");
            }
            cfg.policy.dilation_f = static_cast<std::uint64_t>(rounded);
            return;
        }
    }
    throw ConfigError("unknown sweep axis");
}

std::vector<SweepRow> run_sweep(const SimConfig& base, SweepAxis axis,
                                std::span<const double> values, std::uint32_t trials,
                                std::uint64_t point_offset) {
    if (values.empty() || trials == 0) {
        throw ConfigError("sweep.values: need at least one value and one trial");
    }
    const std::size_t jobs = values.size() * trials;
    std::vector<SweepRow> rows(jobs);
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= jobs) {
                return;
            }
            try {
                std::size_t point = i / trials;
                std::uint32_t trial = static_cast<std::uint32_t>(i % trials);
                SimConfig cfg = base;
                apply_sweep_value(cfg, axis, values[point]);
                cfg.seed = run_seed(base.seed, point_offset + point, trial);
                rows[i] = {values[point], trial, run_link(cfg).summary};
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) {
                    first_error = std::current_exception();
                }
                next.store(jobs);
                return;
            }
        }
    };

    unsigned pool = std::min<std::size_t>(std::thread::hardware_concurrency(), jobs);
    pool = std::max(1u, pool);
    std::vector<std::thread> threads;
    threads.reserve(pool);
    for (unsigned t = 0; t < pool; ++t) {
        threads.emplace_back(worker);
    }
    for (std::thread& t : threads) {
        t.join();
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }
    return rows;
}

} // namespace ehlink
