#include "ehlink/presets.hpp"
#include "ehlink/report.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>

using namespace ehlink;

namespace {

std::string render_preset(const std::string& name, std::uint64_t horizon, std::uint64_t seed,
                          std::uint32_t trials = 1) {
    RunOverrides overrides;
    overrides.horizon = horizon;
    overrides.seed = seed;
    overrides.trials = trials;
    std::ostringstream out;
    run_preset(make_preset(name), overrides, out);
    return out.str();
}

std::size_t count_lines(const std::string& text) {
    std::size_t lines = 0;
    for (char c : text) {
        if (c == '\n') {
            ++lines;
        }
    }
    return lines;
}

} // namespace

TEST_CASE("preset names") {
    CHECK(is_preset_name("fig1"));
    CHECK(is_preset_name("fig4"));
    CHECK(!is_preset_name("fig5"));
    CHECK_THROWS(make_preset("fig9"));
}

TEST_CASE("preset parameters match the published experiments") {
    ExperimentPreset fig1 = make_preset("fig1");
    CHECK(fig1.base.rx_cost == 0.5);
    CHECK(fig1.base.tx_capacity == 50.0);
    CHECK(fig1.base.rx_capacity == 50.0);
    CHECK(fig1.base.rx_harvest.mean() > fig1.base.rx_cost); // receiver unconstrained
    CHECK(fig1.axis == SweepAxis::TxProb);
    REQUIRE(fig1.policies.size() == 1);
    CHECK(fig1.policies[0].kind == PolicyKind::Unconstrained);

    ExperimentPreset fig2 = make_preset("fig2");
    CHECK(fig2.base.tx_capacity == 1000.0);
    CHECK(fig2.base.rx_capacity == 1000.0);
    REQUIRE(fig2.policies.size() == 2);
    CHECK(fig2.policies[1].kind == PolicyKind::Dilated);
    CHECK(fig2.policies[1].dilation_f == 100);

    ExperimentPreset fig4 = make_preset("fig4");
    CHECK(fig4.base.tx_capacity == 50.0);
    CHECK(fig4.values == std::vector<double>{0.1, 0.2, 0.4});
    REQUIRE(fig4.policies.size() == 2);
    CHECK(fig4.policies[1].kind == PolicyKind::Uncoordinated);
}

TEST_CASE("preset CSV output is byte-stable") {
    std::string a = render_preset("fig1", 1'000, 7);
    std::string b = render_preset("fig1", 1'000, 7);
    CHECK(a == b);
    // header + 9 sweep points x 1 policy x 1 trial
    CHECK(count_lines(a) == 10);

    std::string c = render_preset("fig1", 1'000, 8);
    CHECK(a != c);
}

TEST_CASE("csv rows carry the schema") {
    std::string header = csv_header();
    CHECK(header.find("throughput_bits_per_slot") != std::string::npos);
    CHECK(header.find("upper_bound_bits_per_slot") != std::string::npos);
    CHECK(header.find("pattern_n_plus") != std::string::npos);
    std::string text = render_preset("fig4", 2'000, 3);
    CHECK(text.find("uncoordinated") != std::string::npos);
    CHECK(text.find("coordinated") != std::string::npos);
    // header + 3 points x 2 policies x 1 trial
    CHECK(count_lines(text) == 7);
}

TEST_CASE("golden file pins the small-horizon fig1 output") {
    std::string produced = render_preset("fig1", 1'000, 7);
    std::ifstream golden(std::string(EHLINK_TEST_DATA_DIR) + "/fig1_h1000_s7.csv",
                         std::ios::binary);
    REQUIRE_MESSAGE(golden.good(), "golden file missing; regenerate with "
                                   "`ehlink run fig1 --horizon 1000 --seed 7`");
    std::stringstream expected;
    expected << golden.rdbuf();
    CHECK(produced == expected.str());
}
