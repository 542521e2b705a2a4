#include "effcom/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

namespace effcom::scenario {

namespace {

const char* kEventNames[] = {"none", "session_start", "stall", "ho_attempt", "ho_success"};

double clamp_rsrp(double v, std::size_t& clamped) {
    if (v < kRsrpMin) {
        ++clamped;
        return kRsrpMin;
    }
    if (v > kRsrpMax) {
        ++clamped;
        return kRsrpMax;
    }
    return v;
}

// Position along a ping-pong route of length L.
double route_position(double path, double length) {
    const double m = std::fmod(path, 2.0 * length);
    return m <= length ? m : 2.0 * length - m;
}

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

double parse_double(const std::string& field, std::size_t line, const char* what) {
    double v = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end)
        throw ParseError(line, std::string("non-numeric ") + what + " value '" + field + "'");
    return v;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

const char* event_name(Event e) { return kEventNames[static_cast<int>(e)]; }

Event event_from_name(const std::string& name) {
    for (int i = 0; i < 5; ++i)
        if (name == kEventNames[i]) return static_cast<Event>(i);
    throw std::invalid_argument("unknown event tag '" + name + "'");
}

void RsrpTrace::validate() const {
    if (cells.empty()) throw std::invalid_argument("RsrpTrace: no cells");
    if (rsrp.size() != cells.size())
        throw std::invalid_argument("RsrpTrace: rsrp/cells size mismatch");
    for (const auto& series : rsrp) {
        if (series.size() != events.size())
            throw std::invalid_argument("RsrpTrace: unequal series lengths");
        for (double v : series)
            if (v < kRsrpMin || v > kRsrpMax)
                throw std::invalid_argument("RsrpTrace: RSRP outside [-140, -44] dBm");
    }
    if (!(slot_duration > 0.0)) throw std::invalid_argument("RsrpTrace: slot_duration must be > 0");
}

void MobilitySpec::validate() const {
    if (bs_positions.empty()) throw std::invalid_argument("MobilitySpec: no base stations");
    if (!(ue_speed > 0.0)) throw std::invalid_argument("MobilitySpec: speed must be > 0");
    if (!(route_length > 0.0)) throw std::invalid_argument("MobilitySpec: route_length must be > 0");
    if (!(ref_distance > 0.0)) throw std::invalid_argument("MobilitySpec: ref_distance must be > 0");
    if (!(pathloss_exponent > 0.0))
        throw std::invalid_argument("MobilitySpec: pathloss_exponent must be > 0");
    if (shadowing_sigma < 0.0) throw std::invalid_argument("MobilitySpec: sigma must be >= 0");
    if (shadowing_correlation < 0.0 || shadowing_correlation >= 1.0)
        throw std::invalid_argument("MobilitySpec: correlation must be in [0, 1)");
    if (!(slot_duration > 0.0)) throw std::invalid_argument("MobilitySpec: slot_duration must be > 0");
}

RsrpTrace generate_trace(const MobilitySpec& spec, std::size_t horizon) {
    spec.validate();
    if (horizon < 1) throw std::invalid_argument("generate_trace: horizon must be >= 1");

    const std::size_t cells = spec.bs_positions.size();
    RsrpTrace trace;
    trace.slot_duration = spec.slot_duration;
    trace.cells.reserve(cells);
    trace.cells.emplace_back("pcell");
    for (std::size_t c = 1; c < cells; ++c) trace.cells.push_back("scell" + std::to_string(c));
    trace.rsrp.assign(cells, std::vector<double>(horizon, 0.0));
    trace.events.assign(horizon, Event::none);
    trace.events[0] = Event::session_start;

    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double rho = spec.shadowing_correlation;
    const double innov = spec.shadowing_sigma * std::sqrt(1.0 - rho * rho);

    std::vector<double> shadow(cells, 0.0);
    for (std::size_t c = 0; c < cells; ++c)
        shadow[c] = spec.shadowing_sigma > 0.0 ? spec.shadowing_sigma * gauss(rng) : 0.0;

    for (std::size_t t = 0; t < horizon; ++t) {
        const double pos =
            route_position(spec.ue_speed * static_cast<double>(t) * spec.slot_duration,
                           spec.route_length);
        for (std::size_t c = 0; c < cells; ++c) {
            const double d = std::max(std::abs(pos - spec.bs_positions[c]), spec.ref_distance);
            const double v = spec.tx_power_at_ref -
                             10.0 * spec.pathloss_exponent * std::log10(d / spec.ref_distance) +
                             shadow[c];
            trace.rsrp[c][t] = clamp_rsrp(v, trace.clamped);
            if (spec.shadowing_sigma > 0.0) shadow[c] = rho * shadow[c] + innov * gauss(rng);
        }
    }
    return trace;
}

RsrpTrace load_trace_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(in, line)) throw ParseError(1, "missing header");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto header = split_csv(line);
    if (header.size() < 3 || header.front() != "t" || header.back() != "event")
        throw ParseError(1, "expected header 't,<cell columns...>,event'");

    RsrpTrace trace;
    trace.cells.assign(header.begin() + 1, header.end() - 1);
    trace.rsrp.assign(trace.cells.size(), {});

    std::vector<double> times;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_csv(line);
        if (fields.size() != header.size())
            throw ParseError(line_no, "expected " + std::to_string(header.size()) +
                                          " fields, got " + std::to_string(fields.size()));
        times.push_back(parse_double(fields[0], line_no, "time"));
        for (std::size_t c = 0; c < trace.cells.size(); ++c) {
            const double v = parse_double(fields[c + 1], line_no, "RSRP");
            trace.rsrp[c].push_back(std::clamp(v, kRsrpMin, kRsrpMax));
            if (v < kRsrpMin || v > kRsrpMax) ++trace.clamped;
        }
        try {
            trace.events.push_back(event_from_name(fields.back()));
        } catch (const std::invalid_argument& e) {
            throw ParseError(line_no, e.what());
        }
    }
    if (times.empty()) throw ParseError(line_no + 1, "trace has no data rows");
    if (times.size() >= 2) {
        trace.slot_duration = times[1] - times[0];
        if (!(trace.slot_duration > 0.0)) throw ParseError(3, "time column must be increasing");
        for (std::size_t i = 2; i < times.size(); ++i) {
            const double dt = times[i] - times[i - 1];
            if (std::abs(dt - trace.slot_duration) > 1e-9 * std::max(1.0, trace.slot_duration))
                throw ParseError(i + 2, "time column must have a fixed step");
        }
    }
    return trace;
}

RsrpTrace load_trace_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open trace file '" + path + "'");
    return load_trace_csv(in);
}

void save_trace_csv(const RsrpTrace& trace, std::ostream& out) {
    trace.validate();
    out << "t";
    for (const auto& c : trace.cells) out << ',' << c;
    out << ",event\n";
    for (std::size_t t = 0; t < trace.slots(); ++t) {
        out << format_double(static_cast<double>(t) * trace.slot_duration);
        for (std::size_t c = 0; c < trace.cells.size(); ++c)
            out << ',' << format_double(trace.rsrp[c][t]);
        out << ',' << event_name(trace.events[t]) << '\n';
    }
}

void save_trace_csv_file(const RsrpTrace& trace, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    save_trace_csv(trace, out);
}

}  // namespace effcom::scenario
