#include "ehlink/errors.hpp"
#include "ehlink/policies.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace ehlink;

TEST_CASE("drift parameters follow beta * sigma^2 * ln(cap) / cap") {
    DriftParams d = make_drift_params(2.0, 0.24, 50.0);
    double expected = 2.0 * 0.24 * std::log(50.0) / 50.0;
    CHECK(d.drift == doctest::Approx(expected).epsilon(1e-12));
    CHECK(d.drift == doctest::Approx(0.0375554).epsilon(1e-4));
}

TEST_CASE("per-slot transmit budget") {
    DriftParams d = make_drift_params(2.0, 0.24, 50.0);
    CHECK(prescribed_draw(30.0, 50.0, 0.4, d) == doctest::Approx(0.4 + d.drift).epsilon(1e-12));
    CHECK(prescribed_draw(0.0, 50.0, 0.4, d) == 0.0);
    CHECK(prescribed_draw(24.999, 50.0, 0.4, d) ==
          doctest::Approx(0.4 - d.drift).epsilon(1e-12));
    // exactly at half capacity counts as the high branch
    CHECK(prescribed_draw(25.0, 50.0, 0.4, d) == doctest::Approx(0.4 + d.drift).epsilon(1e-12));
}

TEST_CASE("receiver schedule floor/ceil pair") {
    RxSchedule s = make_rx_schedule(0.5, 0.3);
    CHECK(s.short_batch == 1);
    CHECK(s.long_batch == 2);
    CHECK(s.period == doctest::Approx(5.0 / 3.0).epsilon(1e-12));
    CHECK(s.drift_short == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
    CHECK(s.drift_long == doctest::Approx(1.0 / 3.0).epsilon(1e-9));

    // integer period degenerates to equal batch lengths and zero drift
    RxSchedule integer = make_rx_schedule(0.5, 0.1);
    CHECK(integer.short_batch == 5);
    CHECK(integer.long_batch == 5);
    CHECK(integer.drift_short == doctest::Approx(0.0));
    CHECK(integer.drift_long == doctest::Approx(0.0));

    CHECK(make_rx_schedule(0.5, 0.5).short_batch == 1);
    CHECK_THROWS_AS(make_rx_schedule(0.5, 0.6), ConfigError);
    CHECK_THROWS_AS(make_rx_schedule(0.5, 0.0), ConfigError);
}

TEST_CASE("dilated schedule stretches the batch and shrinks per-slot drift") {
    DilatedSchedule s = make_dilated_schedule(0.5, 0.3, 100);
    CHECK(s.short_batch == 166);
    CHECK(s.long_batch == 167);
    CHECK(s.drift_short_total == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
    CHECK(s.drift_short_per_slot == doctest::Approx(0.004016).epsilon(1e-3));
    CHECK(s.drift_long_total == doctest::Approx(1.0 / 3.0).epsilon(1e-9));

    DilatedSchedule unit = make_dilated_schedule(0.5, 0.3, 1);
    RxSchedule base = make_rx_schedule(0.5, 0.3);
    CHECK(unit.short_batch == base.short_batch);
    CHECK(unit.long_batch == base.long_batch);

    CHECK_THROWS_AS(make_dilated_schedule(0.5, 0.3, 0), ConfigError);
}

TEST_CASE("pattern calibration picks the best small rational") {
    CHECK(calibrate_pattern(500'000, 100'000).n_plus == 5);
    CHECK(calibrate_pattern(500'000, 100'000).n_minus == 1);

    BatchPattern even = calibrate_pattern(300'000, 300'000);
    CHECK(even.n_plus == 1);
    CHECK(even.n_minus == 1);

    BatchPattern two_thirds = calibrate_pattern(200'000, 300'000);
    CHECK(two_thirds.n_plus == 2);
    CHECK(two_thirds.n_minus == 3);

    // ties resolve toward the smaller pattern
    BatchPattern half = calibrate_pattern(100'000, 200'000);
    CHECK(half.n_plus == 1);
    CHECK(half.n_minus == 2);

    CHECK(calibrate_pattern(1000, 0).n_plus == 1);
    CHECK(calibrate_pattern(1000, 0).n_minus == 0);
    CHECK(calibrate_pattern(0, 1000).n_plus == 0);
    CHECK(calibrate_pattern(0, 1000).n_minus == 1);
    CHECK_THROWS_AS(calibrate_pattern(0, 0), ConfigError);
}

namespace {

// Drives the receiver half of a batch policy with a battery that never
// runs low and reports which slots were scheduled on-slots.
template <class Policy>
std::vector<std::uint64_t> scheduled_slots(Policy policy, std::uint64_t slots) {
    NodeEnergyState rich{40.0, 50.0, 0.0};
    std::vector<std::uint64_t> on;
    for (std::uint64_t n = 1; n <= slots; ++n) {
        RxAction a = policy.rx_step(n, rich);
        if (a.scheduled) {
            on.push_back(n);
        }
    }
    return on;
}

} // namespace

TEST_CASE("uncoordinated pattern unrolls deterministically") {
    RxSchedule sched = make_rx_schedule(0.5, 0.3); // short 1, long 2
    DriftParams drift = make_drift_params(2.0, 0.24, 50.0);

    auto on = scheduled_slots(
        UncoordinatedPolicy(sched, drift, 0.4, 0.5, BatchPattern{1, 1}), 9);
    CHECK(on == std::vector<std::uint64_t>{1, 3, 4, 6, 7, 9});

    auto all_short = scheduled_slots(
        UncoordinatedPolicy(sched, drift, 0.4, 0.5, BatchPattern{1, 0}), 6);
    CHECK(all_short == std::vector<std::uint64_t>{1, 2, 3, 4, 5, 6});

    auto all_long = scheduled_slots(
        UncoordinatedPolicy(sched, drift, 0.4, 0.5, BatchPattern{0, 1}), 6);
    CHECK(all_long == std::vector<std::uint64_t>{2, 4, 6});
}

TEST_CASE("coordinated schedule follows the half-battery belief") {
    RxSchedule sched = make_rx_schedule(0.5, 0.3);
    DriftParams drift = make_drift_params(2.0, 0.24, 50.0);

    // battery pinned above half: batches of one slot, attempt every slot
    auto every = scheduled_slots(
        CoordinatedPolicy(sched, drift, 0.4, 0.5, 25.0, true), 5);
    CHECK(every == std::vector<std::uint64_t>{1, 2, 3, 4, 5});

    // battery pinned below half via a poor state: attempt every 2nd slot
    CoordinatedPolicy policy(sched, drift, 0.4, 0.5, 25.0, false);
    NodeEnergyState poor{10.0, 50.0, 0.0};
    std::vector<std::uint64_t> on;
    for (std::uint64_t n = 1; n <= 6; ++n) {
        if (policy.rx_step(n, poor).scheduled) {
            on.push_back(n);
        }
    }
    CHECK(on == std::vector<std::uint64_t>{2, 4, 6});
}

TEST_CASE("coordinated transmitter accumulates then flushes") {
    RxSchedule sched = make_rx_schedule(0.5, 0.3);
    DriftParams drift = make_drift_params(2.0, 0.24, 50.0);
    // belief false: two-slot batches; low battery branch throughout
    CoordinatedPolicy tx(sched, drift, 0.4, 0.5, 25.0, false);
    NodeEnergyState state{10.0, 50.0, 0.0};
    double budget = 0.4 - drift.drift;

    TxAction first = tx.tx_step(1, state);
    CHECK(!first.transmit);
    CHECK(first.accumulate == doctest::Approx(budget).epsilon(1e-12));
    state = transfer_to_supercap(state, first.accumulate);

    TxAction second = tx.tx_step(2, state);
    CHECK(second.transmit);
    CHECK(second.drain_supercap);
    CHECK(second.air_energy == doctest::Approx(2.0 * budget).epsilon(1e-12));
    CHECK(second.battery_draw == doctest::Approx(budget).epsilon(1e-12));
}
