#include <doctest.h>

#include <sstream>

#include "effcom/scenario.hpp"

using namespace effcom::scenario;

TEST_CASE("generate_trace hits tx_power_at_ref with zero shadowing at the reference distance") {
    MobilitySpec spec;
    spec.bs_positions = {50.0};  // UE starts at 0, distance floors to ref
    spec.shadowing_sigma = 0.0;
    spec.ue_speed = 1.0;
    spec.route_length = 1000.0;
    const auto trace = generate_trace(spec, 1);
    CHECK(trace.rsrp[0][0] == doctest::Approx(spec.tx_power_at_ref));
}

TEST_CASE("generate_trace is monotone nonincreasing when the UE moves away") {
    MobilitySpec spec;
    spec.bs_positions = {0.0};
    spec.shadowing_sigma = 0.0;
    spec.ue_speed = 20.0;
    spec.route_length = 100000.0;  // no turn-around within the horizon
    const auto trace = generate_trace(spec, 50);
    for (std::size_t t = 1; t < 50; ++t) CHECK(trace.rsrp[0][t] <= trace.rsrp[0][t - 1]);
    // strictly decreasing once past the reference-distance floor
    CHECK(trace.rsrp[0][49] < trace.rsrp[0][10]);
}

TEST_CASE("generate_trace is reproducible for a fixed seed") {
    MobilitySpec spec;
    spec.seed = 99;
    const auto a = generate_trace(spec, 60);
    const auto b = generate_trace(spec, 60);
    CHECK(a == b);

    spec.seed = 100;
    CHECK(!(generate_trace(spec, 60) == a));
}

TEST_CASE("generated RSRP stays inside the valid range") {
    MobilitySpec spec;
    spec.shadowing_sigma = 12.0;
    const auto trace = generate_trace(spec, 200);
    for (const auto& series : trace.rsrp)
        for (double v : series) {
            CHECK(v >= kRsrpMin);
            CHECK(v <= kRsrpMax);
        }
}

TEST_CASE("CSV round-trip is the identity on valid traces") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        MobilitySpec spec;
        spec.seed = seed;
        const auto trace = generate_trace(spec, 20);
        std::stringstream ss;
        save_trace_csv(trace, ss);
        CHECK(load_trace_csv(ss) == trace);
    }
}

TEST_CASE("load parses a small fixture") {
    std::stringstream ss(
        "t,pcell,scell1,scell2,event\n"
        "0,-80,-90.5,-100,session_start\n"
        "1,-81,-89,-99,none\n"
        "2,-82,-88,-98,ho_success\n");
    const auto trace = load_trace_csv(ss);
    CHECK(trace.slots() == 3);
    CHECK(trace.cells == std::vector<std::string>{"pcell", "scell1", "scell2"});
    CHECK(trace.rsrp[1][0] == -90.5);
    CHECK(trace.events[2] == Event::ho_success);
    CHECK(trace.slot_duration == 1.0);
}

TEST_CASE("load clamps out-of-range RSRP and counts it") {
    std::stringstream ss(
        "t,pcell,event\n"
        "0,-30,none\n"
        "1,-90,none\n");
    const auto trace = load_trace_csv(ss);
    CHECK(trace.rsrp[0][0] == -44.0);
    CHECK(trace.clamped == 1);
}

TEST_CASE("load rejects malformed input with line numbers") {
    auto expect_error_at = [](const std::string& text, std::size_t line) {
        std::stringstream ss(text);
        try {
            load_trace_csv(ss);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line == line);
        }
    };
    expect_error_at("x,pcell,event\n0,-80,none\n", 1);                     // bad header
    expect_error_at("t,pcell,event\n0,oops,none\n", 2);                    // non-numeric RSRP
    expect_error_at("t,pcell,event\n0,-80,none\n1,-80,warp\n", 3);         // unknown event
    expect_error_at("t,pcell,event\n0,-80,none\n1,-80\n", 3);              // ragged row
    expect_error_at("", 1);                                                // missing header
}

TEST_CASE("trace validation rejects inconsistent structures") {
    RsrpTrace t;
    t.cells = {"pcell"};
    t.rsrp = {{-80.0, -81.0}};
    t.events = {Event::none};  // length mismatch
    CHECK_THROWS_AS(t.validate(), std::invalid_argument);
}
