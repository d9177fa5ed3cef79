#pragma once

#include "ehlink/rng.hpp"

namespace ehlink {

/// Stationary ergodic per-slot energy arrival process at one node.
/// Only Bernoulli arrivals are implemented; the kind enumeration leaves
/// room for other stationary processes without changing the interface.
class HarvestProcess {
public:
    enum class Kind { Bernoulli };

    /// `amount` units arrive with probability `prob` each slot, else 0.
    /// With the default amount of 1 the arrival probability equals the
    /// mean harvesting rate, which is how sweep axes are expressed.
    static HarvestProcess bernoulli(double prob, double amount = 1.0);

    Kind kind() const noexcept { return kind_; }
    double prob() const noexcept { return prob_; }
    double amount() const noexcept { return amount_; }

    /// Mean energy per slot.
    double mean() const noexcept { return prob_ * amount_; }

    /// Asymptotic variance of the per-slot arrival sequence.
    double asymptotic_variance() const noexcept {
        return prob_ * (1.0 - prob_) * amount_ * amount_;
    }

    /// Draws one slot's arrival. The stream must be owned by a single
    /// node for a single run; arrivals are i.i.d. across slots.
    double sample(RandomStream& rng) const noexcept {
        return canonical_unit(rng) < prob_ ? amount_ : 0.0;
    }

private:
    HarvestProcess(Kind kind, double prob, double amount)
        : kind_(kind), prob_(prob), amount_(amount) {}

    Kind kind_;
    double prob_;
    double amount_;
};

} // namespace ehlink
