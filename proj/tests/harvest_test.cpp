#include "ehlink/errors.hpp"
#include "ehlink/harvest.hpp"
#include "ehlink/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace ehlink;

TEST_CASE("bernoulli degenerate probabilities") {
    RandomStream rng(42);
    auto always = HarvestProcess::bernoulli(1.0, 1.0);
    auto never = HarvestProcess::bernoulli(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        CHECK(always.sample(rng) == 1.0);
        CHECK(never.sample(rng) == 0.0);
    }
}

TEST_CASE("bernoulli mean and asymptotic variance") {
    CHECK(HarvestProcess::bernoulli(0.4, 1.0).mean() == doctest::Approx(0.4));
    CHECK(HarvestProcess::bernoulli(0.3, 2.0).mean() == doctest::Approx(0.6));
    CHECK(HarvestProcess::bernoulli(0.0, 5.0).mean() == 0.0);
    CHECK(HarvestProcess::bernoulli(0.5, 1.0).asymptotic_variance() == doctest::Approx(0.25));
    CHECK(HarvestProcess::bernoulli(1.0, 1.0).asymptotic_variance() == 0.0);
    CHECK(HarvestProcess::bernoulli(0.4, 1.0).asymptotic_variance() == doctest::Approx(0.24));
}

TEST_CASE("invalid process parameters are rejected") {
    CHECK_THROWS_AS(HarvestProcess::bernoulli(-0.1, 1.0), ConfigError);
    CHECK_THROWS_AS(HarvestProcess::bernoulli(1.5, 1.0), ConfigError);
    CHECK_THROWS_AS(HarvestProcess::bernoulli(0.5, 0.0), ConfigError);
    CHECK_THROWS_AS(HarvestProcess::bernoulli(0.5, -1.0), ConfigError);
}

TEST_CASE("sample mean obeys the law of large numbers") {
    auto proc = HarvestProcess::bernoulli(0.4, 1.0);
    RandomStream rng(node_stream(1, kTxNode));
    const std::size_t n = 1'000'000;
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sum += proc.sample(rng);
    }
    double mean = sum / static_cast<double>(n);
    double sigma = std::sqrt(proc.asymptotic_variance());
    CHECK(std::abs(mean - proc.mean()) <= 3.0 * sigma / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("same seed replays the identical arrival sequence") {
    auto proc = HarvestProcess::bernoulli(0.3, 1.0);
    RandomStream a(node_stream(99, kTxNode));
    RandomStream b(node_stream(99, kTxNode));
    for (int i = 0; i < 10'000; ++i) {
        CHECK(proc.sample(a) == proc.sample(b));
    }
}

TEST_CASE("per-node sub-streams are uncorrelated") {
    auto proc = HarvestProcess::bernoulli(0.4, 1.0);
    RandomStream tx(node_stream(7, kTxNode));
    RandomStream rx(node_stream(7, kRxNode));
    const std::size_t n = 1'000'000;
    double sx = 0.0;
    double sy = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double x = proc.sample(tx);
        double y = proc.sample(rx);
        sx += x;
        sy += y;
        sxy += x * y;
    }
    double nd = static_cast<double>(n);
    double mx = sx / nd;
    double my = sy / nd;
    double cov = sxy / nd - mx * my;
    double corr = cov / proc.asymptotic_variance();
    CHECK(std::abs(corr) <= 4.0 / std::sqrt(nd));
}

TEST_CASE("seed derivation gives distinct sub-seeds") {
    std::vector<std::uint64_t> seeds;
    for (std::uint64_t point = 0; point < 8; ++point) {
        for (std::uint64_t trial = 0; trial < 8; ++trial) {
            seeds.push_back(run_seed(123, point, trial));
        }
    }
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        for (std::size_t j = i + 1; j < seeds.size(); ++j) {
            CHECK(seeds[i] != seeds[j]);
        }
    }
}
