#include "ehlink/policies.hpp"

#include "ehlink/errors.hpp"

#include <cmath>
#include <string>

namespace ehlink {

std::string_view policy_kind_name(PolicyKind kind) noexcept {
    switch (kind) {
        case PolicyKind::Unconstrained: return "unconstrained";
        case PolicyKind::Coordinated:   return "coordinated";
        case PolicyKind::Dilated:       return "dilated";
        case PolicyKind::Uncoordinated: return "uncoordinated";
    }
    return "?";
}

DriftParams make_drift_params(double beta, double sigma2, double capacity) {
    if (!(capacity > 0.0)) {
        throw ConfigError("battery capacity must be > 0");
    }
    double drift = beta * sigma2 * std::max(0.0, std::log(capacity)) / capacity;
    return {drift, beta};
}

RxSchedule make_rx_schedule(double rx_cost, double mu_r) {
    if (!(mu_r > 0.0)) {
        throw ConfigError("receiver schedule needs a positive mean harvest rate");
    }
    RxSchedule s;
    s.period = rx_cost / mu_r;
    s.short_batch = static_cast<std::uint64_t>(std::floor(s.period));
    s.long_batch = static_cast<std::uint64_t>(std::ceil(s.period));
    if (s.short_batch < 1) {
        throw ConfigError("receiver schedule needs rx_cost >= mean rx harvest rate");
    }
    s.drift_short = s.period - static_cast<double>(s.short_batch);
    s.drift_long = static_cast<double>(s.long_batch) - s.period;
    return s;
}

DilatedSchedule make_dilated_schedule(double rx_cost, double mu_r, std::uint64_t factor) {
    if (factor < 1) {
        throw ConfigError("dilation factor must be a positive integer");
    }
    RxSchedule base = make_rx_schedule(rx_cost, mu_r);
    DilatedSchedule s;
    s.factor = factor;
    double f = static_cast<double>(factor);
    double stretched = (rx_cost * f) / mu_r;
    s.short_batch = static_cast<std::uint64_t>(std::floor(stretched));
    s.long_batch = static_cast<std::uint64_t>(std::ceil(stretched));
    s.drift_short_total = f * base.period - static_cast<double>(s.short_batch);
    s.drift_long_total = static_cast<double>(s.long_batch) - f * base.period;
    s.drift_short_per_slot = s.drift_short_total / static_cast<double>(s.short_batch);
    s.drift_long_per_slot = s.drift_long_total / static_cast<double>(s.long_batch);
    return s;
}

BatchPattern calibrate_pattern(std::uint64_t above_half_slots, std::uint64_t below_half_slots) {
    if (below_half_slots == 0 && above_half_slots == 0) {
        throw ConfigError("calibration needs a nonempty occupancy count");
    }
    if (below_half_slots == 0) {
        return {1, 0};
    }
    if (above_half_slots == 0) {
        return {0, 1};
    }
    double ratio = static_cast<double>(above_half_slots) / static_cast<double>(below_half_slots);
    BatchPattern best{1, 1};
    double best_err = std::abs(1.0 - ratio);
    for (std::uint32_t p = 0; p <= 10; ++p) {
        for (std::uint32_t q = 1; q <= 10; ++q) {
            double err = std::abs(static_cast<double>(p) / static_cast<double>(q) - ratio);
            if (err < best_err ||
                (err == best_err && p + q < best.n_plus + best.n_minus)) {
                best = {p, q};
                best_err = err;
            }
        }
    }
    return best;
}

BatchPattern calibrate_uncoordinated(const Trace& trace, double rx_half_capacity) {
    if (trace.empty()) {
        throw ConfigError("calibration needs a nonempty trace");
    }
    std::uint64_t above = 0;
    std::uint64_t below = 0;
    for (const SlotRecord& rec : trace) {
        if (rec.rx_battery_after >= rx_half_capacity) {
            ++above;
        } else {
            ++below;
        }
    }
    return calibrate_pattern(above, below);
}

} // namespace ehlink
