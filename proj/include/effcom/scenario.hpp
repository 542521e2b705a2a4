#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace effcom::scenario {

constexpr double kRsrpMin = -140.0;  // dBm
constexpr double kRsrpMax = -44.0;   // dBm

enum class Event { none, session_start, stall, ho_attempt, ho_success };

const char* event_name(Event e);
Event event_from_name(const std::string& name);  // throws on unknown tag

struct RsrpTrace {
    double slot_duration = 1.0;               // seconds
    std::vector<std::string> cells;           // primary first
    std::vector<std::vector<double>> rsrp;    // [cell][slot], dBm
    std::vector<Event> events;                // per slot
    std::size_t clamped = 0;                  // values forced into range

    std::size_t slots() const { return events.size(); }
    void validate() const;

    bool operator==(const RsrpTrace& o) const {
        return slot_duration == o.slot_duration && cells == o.cells && rsrp == o.rsrp &&
               events == o.events;
    }
};

/// 1-D route between collinear base stations; log-distance path loss with
/// AR(1) Gaussian shadowing.
struct MobilitySpec {
    std::vector<double> bs_positions = {100.0, 200.0, 300.0};  // meters
    double ue_speed = 25.0;              // m/s
    double route_length = 550.0;         // meters, UE ping-pongs along [0, L]
    double tx_power_at_ref = -60.0;      // dBm at ref_distance
    double ref_distance = 50.0;          // meters, also the distance floor
    double pathloss_exponent = 3.5;
    double shadowing_sigma = 4.0;        // dB
    double shadowing_correlation = 0.9;  // AR(1) coefficient
    std::uint64_t seed = 1;
    double slot_duration = 1.0;          // seconds

    void validate() const;
};

struct ParseError : std::runtime_error {
    std::size_t line;
    ParseError(std::size_t line_, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

RsrpTrace generate_trace(const MobilitySpec& spec, std::size_t horizon);

RsrpTrace load_trace_csv(std::istream& in);
RsrpTrace load_trace_csv_file(const std::string& path);

void save_trace_csv(const RsrpTrace& trace, std::ostream& out);
void save_trace_csv_file(const RsrpTrace& trace, const std::string& path);

}  // namespace effcom::scenario
