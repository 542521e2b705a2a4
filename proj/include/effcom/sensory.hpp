#pragma once

#include <cmath>
#include <stdexcept>

namespace effcom::sensory {

struct SenseSpec {
    double range_span;   // physical units
    double resolution;   // same units
    double receptors;    // count
    double sample_rate;  // Hz
    double distance;     // meters
    double nerve_speed;  // m/s

    void validate() const {
        if (!(range_span > 0.0 && resolution > 0.0 && receptors > 0.0 && sample_rate > 0.0 &&
              distance > 0.0 && nerve_speed > 0.0))
            throw std::invalid_argument("SenseSpec: all fields must be positive");
        if (!(resolution < range_span))
            throw std::invalid_argument("SenseSpec: resolution must be below range_span");
    }
};

/// ceil(log2(range_span / resolution))
inline int quantization_bits(double range_span, double resolution) {
    if (!(range_span > 0.0 && resolution > 0.0 && resolution < range_span))
        throw std::invalid_argument("quantization_bits: need 0 < resolution < range_span");
    return static_cast<int>(std::ceil(std::log2(range_span / resolution) - 1e-9));
}

/// receptors * bits * sample_rate, in bits/s.
inline double bitrate(double receptors, int bits, double sample_rate) {
    if (!(receptors > 0.0 && bits > 0 && sample_rate > 0.0))
        throw std::invalid_argument("bitrate: inputs must be positive");
    return receptors * static_cast<double>(bits) * sample_rate;
}

/// distance / nerve_speed, in seconds.
inline double max_delay(double distance, double nerve_speed) {
    if (!(distance > 0.0 && nerve_speed > 0.0))
        throw std::invalid_argument("max_delay: inputs must be positive");
    return distance / nerve_speed;
}

}  // namespace effcom::sensory
