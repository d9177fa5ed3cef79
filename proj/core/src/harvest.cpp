#include "ehlink/harvest.hpp"

#include "ehlink/errors.hpp"

#include <string>

namespace ehlink {

HarvestProcess HarvestProcess::bernoulli(double prob, double amount) {
    if (!(prob >= 0.0 && prob <= 1.0)) {
        throw ConfigError("harvest probability must be in [0,1], got " + std::to_string(prob));
    }
    if (!(amount > 0.0)) {
        throw ConfigError("harvest amount must be > 0, got " + std::to_string(amount));
    }
    return HarvestProcess(Kind::Bernoulli, prob, amount);
}

} // namespace ehlink
