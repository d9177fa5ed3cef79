#include "ehlink/bounds.hpp"
#include "ehlink/harvest.hpp"
#include "ehlink/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace ehlink;

TEST_CASE("upper bound closed forms") {
    // receiver unconstrained: log2(1 + mu_t)
    CHECK(throughput_upper_bound({0.4, 0.6, 0.5}) == doctest::Approx(std::log2(1.4)).epsilon(1e-12));
    CHECK(throughput_upper_bound({0.4, 0.6, 0.5}) == doctest::Approx(0.48543).epsilon(1e-4));

    // receiver constrained: duty-cycled form
    double expected = 0.6 * std::log2(1.0 + 0.5 * 0.4 / 0.3);
    CHECK(throughput_upper_bound({0.4, 0.3, 0.5}) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(throughput_upper_bound({0.4, 0.3, 0.5}) == doctest::Approx(0.44218).epsilon(1e-4));

    CHECK(throughput_upper_bound({0.4, 0.0, 0.5}) == 0.0);
}

TEST_CASE("upper bound branches agree at mu_r == rx_cost") {
    double a = throughput_upper_bound({0.4, 0.5, 0.5});
    double b = (0.5 / 0.5) * std::log2(1.0 + 0.5 * 0.4 / 0.5);
    CHECK(a == doctest::Approx(std::log2(1.4)).epsilon(1e-12));
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
}

TEST_CASE("upper bound is nondecreasing in both harvest rates") {
    RandomStream rng(5);
    for (int i = 0; i < 300; ++i) {
        double mu_t = 2.0 * canonical_unit(rng);
        double mu_r = 1.5 * canonical_unit(rng);
        double r = 0.2 + canonical_unit(rng);
        double base = throughput_upper_bound({mu_t, mu_r, r});
        CHECK(throughput_upper_bound({mu_t + 0.05, mu_r, r}) >= base - 1e-12);
        CHECK(throughput_upper_bound({mu_t, mu_r + 0.05, r}) >= base - 1e-12);
    }
}

TEST_CASE("genie oracle handles degenerate inputs") {
    std::vector<double> zeros(4, 0.0);
    std::vector<double> ones(4, 1.0);
    CHECK(genie_throughput_oracle({1.0, 1.0, 1.0}, zeros, ones) == 0.0);
    // four on-slots, one unit of transmit energy each: log2(2) per slot
    CHECK(genie_throughput_oracle({1.0, 1.0, 1.0}, ones, ones) == doctest::Approx(1.0));

    std::vector<double> empty;
    CHECK_THROWS_AS(genie_throughput_oracle({1.0, 1.0, 1.0}, empty, empty),
                    std::invalid_argument);
    std::vector<double> three(3, 1.0);
    CHECK_THROWS_AS(genie_throughput_oracle({1.0, 1.0, 1.0}, ones, three),
                    std::invalid_argument);
}

TEST_CASE("genie oracle approaches the closed form") {
    LinkParams params{0.4, 0.3, 0.5};
    auto tx_proc = HarvestProcess::bernoulli(0.4, 1.0);
    auto rx_proc = HarvestProcess::bernoulli(0.3, 1.0);
    double bound = throughput_upper_bound(params);

    RandomStream tx_rng(node_stream(31, kTxNode));
    RandomStream rx_rng(node_stream(31, kRxNode));
    std::vector<double> tx;
    std::vector<double> rx;
    tx.reserve(1'000'000);
    rx.reserve(1'000'000);
    std::vector<double> gaps;
    for (std::size_t n : {std::size_t{10'000}, std::size_t{100'000}, std::size_t{1'000'000}}) {
        while (tx.size() < n) {
            tx.push_back(tx_proc.sample(tx_rng));
            rx.push_back(rx_proc.sample(rx_rng));
        }
        gaps.push_back(std::abs(genie_throughput_oracle(params, tx, rx) - bound));
    }
    CHECK(gaps.back() < gaps.front());
    CHECK(gaps.back() < 0.01 * bound);
}
