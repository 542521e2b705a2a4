#include <doctest.h>

#include "effcom/sensory.hpp"

using namespace effcom::sensory;

TEST_CASE("quantization bits for known resolutions") {
    CHECK(quantization_bits(40.0, 0.02) == 11);
    CHECK(quantization_bits(2.0, 1.0) == 1);
    CHECK(quantization_bits(1024.0, 1.0) == 10);
    CHECK_THROWS_AS(quantization_bits(1.0, 2.0), std::invalid_argument);
}

TEST_CASE("bitrate arithmetic") {
    CHECK(bitrate(48000.0, 11, 50.0) == doctest::Approx(26.4e6));
    CHECK(bitrate(1.0, 1, 1.0) == 1.0);
    // hands + feet temperature rate
    CHECK(26.4e6 + 33.8e6 == doctest::Approx(60.2e6));
}

TEST_CASE("bitrate is linear in each argument") {
    const double base = bitrate(100.0, 4, 10.0);
    CHECK(bitrate(200.0, 4, 10.0) == doctest::Approx(2.0 * base));
    CHECK(bitrate(100.0, 8, 10.0) == doctest::Approx(2.0 * base));
    CHECK(bitrate(100.0, 4, 20.0) == doctest::Approx(2.0 * base));
}

TEST_CASE("quantization bits are monotone in span and resolution") {
    CHECK(quantization_bits(80.0, 0.02) >= quantization_bits(40.0, 0.02));
    CHECK(quantization_bits(40.0, 0.01) >= quantization_bits(40.0, 0.02));
}

TEST_CASE("maximum signalling delay") {
    CHECK(max_delay(2.0, 30.0) == doctest::Approx(0.0667).epsilon(1e-2));
    CHECK(max_delay(1.5, 30.0) == doctest::Approx(0.05));
    CHECK(max_delay(0.3, 30.0) == doctest::Approx(0.01));
    CHECK_THROWS_AS(max_delay(-1.0, 30.0), std::invalid_argument);
}
