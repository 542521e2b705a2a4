#include <doctest.h>

#include <random>

#include "effcom/encoding.hpp"
#include "effcom/scenario.hpp"

using namespace effcom;
using namespace effcom::encoding;

namespace {

scenario::RsrpTrace make_trace(std::vector<std::vector<double>> rsrp) {
    scenario::RsrpTrace t;
    for (std::size_t c = 0; c < rsrp.size(); ++c)
        t.cells.push_back(c == 0 ? "pcell" : "scell" + std::to_string(c));
    t.events.assign(rsrp[0].size(), scenario::Event::none);
    t.rsrp = std::move(rsrp);
    return t;
}

std::vector<std::vector<int>> quantized(const scenario::RsrpTrace& t, double step) {
    std::vector<std::vector<int>> q(t.slots(), std::vector<int>(t.cells.size()));
    for (std::size_t s = 0; s < t.slots(); ++s)
        for (std::size_t c = 0; c < t.cells.size(); ++c) q[s][c] = quantize(t.rsrp[c][s], step);
    return q;
}

}  // namespace

TEST_CASE("Elias gamma codes known values") {
    BitWriter w;
    write_gamma(w, 1);  // "1"
    write_gamma(w, 3);  // "011"
    CHECK(w.bit_count() == 4);
    BitReader r(w.bytes(), w.bit_count());
    CHECK(read_gamma(r) == 1);
    CHECK(read_gamma(r) == 3);
}

TEST_CASE("gamma round-trips arbitrary values and stays prefix-free") {
    std::mt19937 rng(1);
    std::uniform_int_distribution<std::uint64_t> d(1, 1 << 20);
    std::vector<std::uint64_t> values;
    BitWriter w;
    for (int i = 0; i < 500; ++i) {
        values.push_back(d(rng));
        write_gamma(w, values.back());
    }
    BitReader r(w.bytes(), w.bit_count());
    for (auto v : values) CHECK(read_gamma(r) == v);
    CHECK(r.remaining() < 8);
}

TEST_CASE("zigzag maps signs to parity") {
    CHECK(zigzag(0) == 0);
    CHECK(zigzag(1) == 2);
    CHECK(zigzag(-1) == 1);
    for (std::int64_t v : {-97, -5, 0, 3, 96}) CHECK(unzigzag(zigzag(v)) == v);
}

TEST_CASE("raw encoding: 3 cells at 8 bits is 24 bits per slot") {
    auto trace = make_trace({{-80.0}, {-90.0}, {-100.0}});
    const auto log = encode_raw(trace, {});
    CHECK(log.cumulative_bits == std::vector<std::uint64_t>{24});

    auto one_cell = make_trace({{-80.0}});
    CHECK(encode_raw(one_cell, {}).cumulative_bits == std::vector<std::uint64_t>{8});
}

TEST_CASE("raw encoding: 60-slot trace accumulates 1440 bits") {
    scenario::MobilitySpec spec;
    auto trace = scenario::generate_trace(spec, 60);
    REQUIRE(trace.cells.size() == 3);
    const auto log = encode_raw(trace, {});
    CHECK(log.cumulative_bits.back() == 1440);
    for (std::size_t t = 1; t < 60; ++t)
        CHECK(log.cumulative_bits[t] - log.cumulative_bits[t - 1] == 24);
}

TEST_CASE("delta encoding matches the hand-coded example") {
    // -100, -100, -99 at 1 dB: 8 + gamma(1)=1 + gamma(3)=3 bits.
    auto trace = make_trace({{-100.0, -100.0, -99.0}});
    const auto log = encode_delta(trace, {});
    CHECK(log.cumulative_bits == std::vector<std::uint64_t>{8, 9, 12});
}

TEST_CASE("delta encoding of a constant trace is 8 + (n-1) bits per cell") {
    auto trace = make_trace({std::vector<double>(10, -95.0)});
    const auto log = encode_delta(trace, {});
    CHECK(log.cumulative_bits.back() == 8 + 9);
}

TEST_CASE("decode is the exact inverse at quantized precision") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> level(-139.0, -45.0);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<std::vector<double>> rows(3, std::vector<double>(20));
        for (auto& row : rows)
            for (auto& v : row) v = level(rng);
        auto trace = make_trace(rows);
        const CodecSpec spec{};
        CHECK(decode(encode_raw(trace, spec), CodecSpec{CodecKind::raw, 8, 1.0}) ==
              quantized(trace, 1.0));
        CHECK(decode(encode_delta(trace, spec), CodecSpec{CodecKind::delta, 8, 1.0}) ==
              quantized(trace, 1.0));
    }
}

TEST_CASE("delta beats raw on smooth synthetic traces") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        scenario::MobilitySpec spec;
        spec.seed = seed;
        auto trace = scenario::generate_trace(spec, 60);
        const auto raw = encode_raw(trace, {});
        const auto delta = encode_delta(trace, {});
        CHECK(delta.cumulative_bits.back() < raw.cumulative_bits.back());
        for (std::size_t t = 1; t < 60; ++t) {
            CHECK(raw.cumulative_bits[t] >= raw.cumulative_bits[t - 1]);
            CHECK(delta.cumulative_bits[t] >= delta.cumulative_bits[t - 1]);
        }
    }
}

TEST_CASE("encode rejects samples that overflow the field width") {
    auto trace = make_trace({{-50.0}});  // level 90 needs 7 bits
    CodecSpec narrow{CodecKind::raw, 6, 1.0};
    CHECK_THROWS_AS(encode_raw(trace, narrow), std::invalid_argument);
}

TEST_CASE("truncated bitstreams raise a decode error with a bit offset") {
    auto trace = make_trace({{-100.0, -99.0}});
    auto log = encode_delta(trace, {});
    log.payloads[1].bit_count = 1;  // chop the gamma code
    try {
        decode(log, CodecSpec{CodecKind::delta, 8, 1.0});
        FAIL("expected DecodeError");
    } catch (const DecodeError& e) {
        CHECK(e.bit_offset <= 1);
    }
}

TEST_CASE("te_bound is zero for a constant source") {
    infotheory::SymbolSeries source{std::vector<int>(40, 0), 2};
    infotheory::SymbolSeries actions{{}, 2};
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> d(0, 1);
    for (int i = 0; i < 40; ++i) actions.symbols.push_back(d(rng));
    for (double v : te_bound_bits(source, actions, {1, 1, infotheory::BiasCorrection::none}))
        CHECK(v == 0.0);
}

TEST_CASE("te_bound of a copy process grows at about one bit per slot") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(0, 1);
    const std::size_t n = 20000;
    infotheory::SymbolSeries y{{}, 2}, x{{}, 2};
    for (std::size_t i = 0; i < n; ++i) y.symbols.push_back(d(rng));
    x.symbols.push_back(0);
    for (std::size_t t = 1; t < n; ++t) x.symbols.push_back(y.symbols[t - 1]);
    const auto bound = te_bound_bits(y, x, {1, 1, infotheory::BiasCorrection::none});
    CHECK(bound.back() / static_cast<double>(n) == doctest::Approx(1.0).epsilon(0.05));
    for (std::size_t t = 1; t < n; ++t) CHECK(bound[t] >= bound[t - 1]);
}

TEST_CASE("bound <= delta <= raw at the horizon on default synthetic scenarios") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        scenario::MobilitySpec mspec;
        mspec.seed = seed;
        auto trace = scenario::generate_trace(mspec, 60);

        infotheory::SymbolSeries source{{}, 2};
        for (std::size_t t = 0; t < 60; ++t) {
            const double best = std::max(trace.rsrp[1][t], trace.rsrp[2][t]);
            source.symbols.push_back(best > trace.rsrp[0][t] ? 1 : 0);
        }
        infotheory::SymbolSeries actions{{}, 2};
        std::mt19937 rng(seed);
        std::uniform_int_distribution<int> d(0, 1);
        for (int i = 0; i < 60; ++i) actions.symbols.push_back(d(rng) & d(rng));

        const auto bound = te_bound_bits(source, actions, {1, 1, infotheory::BiasCorrection::none});
        const auto raw = encode_raw(trace, {});
        const auto delta = encode_delta(trace, {});
        CHECK(bound.back() <= static_cast<double>(delta.cumulative_bits.back()));
        CHECK(delta.cumulative_bits.back() <= raw.cumulative_bits.back());
    }
}
