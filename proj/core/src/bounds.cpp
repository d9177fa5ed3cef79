#include "ehlink/bounds.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace ehlink {

double throughput_upper_bound(const LinkParams& params) {
    if (params.mu_r <= 0.0) {
        return 0.0;
    }
    if (params.mu_r >= params.rx_cost) {
        return std::log2(1.0 + params.mu_t);
    }
    double duty = params.mu_r / params.rx_cost;
    return duty * std::log2(1.0 + params.rx_cost * params.mu_t / params.mu_r);
}

double genie_throughput_oracle(const LinkParams& params,
                               std::span<const double> tx_arrivals,
                               std::span<const double> rx_arrivals) {
    if (tx_arrivals.empty() || rx_arrivals.empty()) {
        throw std::invalid_argument("genie oracle needs nonempty arrival sequences");
    }
    if (tx_arrivals.size() != rx_arrivals.size()) {
        throw std::invalid_argument("genie oracle needs equal-length arrival sequences");
    }
    const std::size_t n = tx_arrivals.size();
    double total_tx = 0.0;
    double total_rx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        total_tx += tx_arrivals[i];
        total_rx += rx_arrivals[i];
    }
    auto on_slots = static_cast<std::size_t>(std::floor(total_rx / params.rx_cost));
    std::size_t used = std::min(on_slots, n);
    if (used == 0 || total_tx <= 0.0) {
        return 0.0;
    }
    double per_slot = total_tx / static_cast<double>(used);
    return static_cast<double>(used) * std::log2(1.0 + per_slot) / static_cast<double>(n);
}

} // namespace ehlink
