#include <doctest.h>

#include "effcom/handover.hpp"

using namespace effcom;
using namespace effcom::handover;

namespace {

scenario::RsrpTrace make_trace(std::vector<std::vector<double>> rsrp) {
    scenario::RsrpTrace t;
    for (std::size_t c = 0; c < rsrp.size(); ++c)
        t.cells.push_back(c == 0 ? "pcell" : "scell" + std::to_string(c));
    t.events.assign(rsrp[0].size(), scenario::Event::none);
    t.rsrp = std::move(rsrp);
    return t;
}

}  // namespace

TEST_CASE("A3 hand-stepped example: handover on the fourth slot") {
    auto trace = make_trace({{-90, -90, -90, -90}, {-95, -88, -86, -85}});
    HandoverParams p;
    p.hysteresis_db = 3.0;
    p.time_to_trigger = 2;
    const auto actions = decide_a3(trace, p);
    CHECK(!actions.slots[0].handover_to);
    CHECK(!actions.slots[1].handover_to);
    CHECK(!actions.slots[2].handover_to);
    REQUIRE(actions.slots[3].handover_to);
    CHECK(*actions.slots[3].handover_to == 1);
    CHECK(actions.slots[3].serving == 1);
    CHECK(actions.handover_count() == 1);
}

TEST_CASE("A3: no handover when the neighbor never clears serving plus hysteresis") {
    auto trace = make_trace({{-90, -90, -90, -90}, {-89, -88, -88, -89}});
    HandoverParams p;  // hysteresis 3 dB
    const auto actions = decide_a3(trace, p);
    CHECK(actions.handover_count() == 0);
    for (const auto& s : actions.slots) CHECK(s.serving == 0);
}

TEST_CASE("A3: exact tie between qualifying neighbors goes to the lower cell index") {
    auto trace = make_trace({{-95, -95, -95}, {-85, -85, -85}, {-85, -85, -85}});
    HandoverParams p;
    p.time_to_trigger = 2;
    const auto actions = decide_a3(trace, p);
    REQUIRE(actions.slots[1].handover_to);
    CHECK(*actions.slots[1].handover_to == 1);
}

TEST_CASE("A3: serving switches at the handover slot and counters reset") {
    auto trace = make_trace({{-95, -95, -95, -95, -95}, {-85, -85, -85, -85, -85}});
    HandoverParams p;
    p.time_to_trigger = 2;
    const auto actions = decide_a3(trace, p);
    REQUIRE(actions.slots[1].handover_to);
    CHECK(actions.slots[1].serving == 1);
    // After switching, cell 1 is serving and no further handover fires.
    for (std::size_t t = 2; t < 5; ++t) {
        CHECK(!actions.slots[t].handover_to);
        CHECK(actions.slots[t].serving == 1);
    }
}

TEST_CASE("A2/A4 hand-stepped example: armed then executed") {
    auto trace = make_trace({{-115, -115, -115}, {-95, -95, -95}});
    HandoverParams p;
    p.algorithm = Algorithm::a2_a4;
    p.time_to_trigger = 2;  // a2 -110, a4 -100 defaults
    const auto actions = decide_a2a4(trace, p);
    CHECK(!actions.slots[0].handover_to);
    REQUIRE(actions.slots[1].handover_to);
    CHECK(*actions.slots[1].handover_to == 1);
}

TEST_CASE("A2/A4: healthy serving cell means no handover") {
    auto trace = make_trace({{-90, -90, -90, -90}, {-95, -95, -95, -95}});
    HandoverParams p;
    p.algorithm = Algorithm::a2_a4;
    CHECK(decide_a2a4(trace, p).handover_count() == 0);
}

TEST_CASE("A2/A4: armed without a qualifying neighbor stays put") {
    auto trace = make_trace({{-115, -115, -115, -115}, {-105, -105, -105, -105}});
    HandoverParams p;
    p.algorithm = Algorithm::a2_a4;
    const auto actions = decide_a2a4(trace, p);
    CHECK(actions.handover_count() == 0);
    for (const auto& s : actions.slots) CHECK(s.serving == 0);
}

TEST_CASE("to_symbols marks handover slots") {
    auto trace = make_trace({{-90, -90, -90, -90}, {-89, -88, -88, -89}});
    const auto none = to_symbols(decide_a3(trace, HandoverParams{}));
    CHECK(none.symbols == std::vector<int>{0, 0, 0, 0});
    CHECK(none.alphabet_size == 2);

    auto trace2 = make_trace({{-90, -90, -90, -90}, {-95, -85, -85, -86}});
    HandoverParams p;
    p.time_to_trigger = 2;
    const auto actions = decide_a3(trace2, p);
    const auto syms = to_symbols(actions);
    std::size_t ones = 0;
    for (int s : syms.symbols) ones += static_cast<std::size_t>(s);
    CHECK(ones == actions.handover_count());
    CHECK(syms.symbols.size() == trace2.slots());
}

TEST_CASE("decisions are deterministic for identical inputs") {
    auto trace = make_trace({{-95, -95, -95, -96}, {-85, -85, -85, -84}});
    HandoverParams p;
    p.time_to_trigger = 2;
    const auto a = decide_a3(trace, p);
    const auto b = decide_a3(trace, p);
    REQUIRE(a.slots.size() == b.slots.size());
    for (std::size_t t = 0; t < a.slots.size(); ++t) {
        CHECK(a.slots[t].serving == b.slots[t].serving);
        CHECK(a.slots[t].handover_to == b.slots[t].handover_to);
    }
}
