#include "effcom/handover.hpp"

#include <stdexcept>

namespace effcom::handover {

void HandoverParams::validate() const {
    if (hysteresis_db < 0.0) throw std::invalid_argument("HandoverParams: hysteresis must be >= 0");
    if (time_to_trigger < 1)
        throw std::invalid_argument("HandoverParams: time_to_trigger must be >= 1");
}

std::size_t ActionSeries::handover_count() const {
    std::size_t n = 0;
    for (const auto& s : slots)
        if (s.handover_to) ++n;
    return n;
}

std::vector<std::size_t> ActionSeries::handover_slots() const {
    std::vector<std::size_t> out;
    for (std::size_t t = 0; t < slots.size(); ++t)
        if (slots[t].handover_to) out.push_back(t);
    return out;
}

DecisionStepper::DecisionStepper(const HandoverParams& params, std::size_t cells)
    : params_(params), cells_(cells), trigger_counters_(cells, 0) {
    params_.validate();
    if (cells_ < 1) throw std::invalid_argument("DecisionStepper: need at least one cell");
}

ActionSeries::Slot DecisionStepper::step(const std::vector<double>& rsrp) {
    if (rsrp.size() != cells_)
        throw std::invalid_argument("DecisionStepper: measurement count mismatch");

    const double serving_rsrp = rsrp[serving_];
    std::optional<std::size_t> target;

    if (params_.algorithm == Algorithm::a3_rsrp) {
        for (std::size_t c = 0; c < cells_; ++c) {
            if (c == serving_) {
                trigger_counters_[c] = 0;
                continue;
            }
            if (rsrp[c] > serving_rsrp + params_.hysteresis_db)
                ++trigger_counters_[c];
            else
                trigger_counters_[c] = 0;
        }
        // Best qualifying neighbor; ties break to the lowest cell index.
        for (std::size_t c = 0; c < cells_; ++c) {
            if (c == serving_ || trigger_counters_[c] < params_.time_to_trigger) continue;
            if (!target || rsrp[c] > rsrp[*target]) target = c;
        }
    } else {
        a2_counter_ = serving_rsrp < params_.a2_threshold ? a2_counter_ + 1 : 0;
        for (std::size_t c = 0; c < cells_; ++c) {
            if (c == serving_) {
                trigger_counters_[c] = 0;
                continue;
            }
            if (rsrp[c] > params_.a4_threshold)
                ++trigger_counters_[c];
            else
                trigger_counters_[c] = 0;
        }
        if (a2_counter_ >= params_.time_to_trigger) {
            for (std::size_t c = 0; c < cells_; ++c) {
                if (c == serving_ || trigger_counters_[c] < params_.time_to_trigger) continue;
                target = c;  // first (lowest-index) qualifying neighbor
                break;
            }
        }
    }

    if (target) {
        serving_ = *target;
        std::fill(trigger_counters_.begin(), trigger_counters_.end(), 0);
        a2_counter_ = 0;
    }
    return {serving_, target};
}

namespace {

ActionSeries run_stepper(const scenario::RsrpTrace& trace, const HandoverParams& params) {
    trace.validate();
    if (trace.slots() == 0) throw std::invalid_argument("decide: empty trace");
    DecisionStepper stepper(params, trace.cells.size());
    ActionSeries out;
    out.slots.reserve(trace.slots());
    std::vector<double> slot_rsrp(trace.cells.size());
    for (std::size_t t = 0; t < trace.slots(); ++t) {
        for (std::size_t c = 0; c < trace.cells.size(); ++c) slot_rsrp[c] = trace.rsrp[c][t];
        out.slots.push_back(stepper.step(slot_rsrp));
    }
    return out;
}

}  // namespace

ActionSeries decide_a3(const scenario::RsrpTrace& trace, const HandoverParams& params) {
    HandoverParams p = params;
    p.algorithm = Algorithm::a3_rsrp;
    return run_stepper(trace, p);
}

ActionSeries decide_a2a4(const scenario::RsrpTrace& trace, const HandoverParams& params) {
    HandoverParams p = params;
    p.algorithm = Algorithm::a2_a4;
    return run_stepper(trace, p);
}

ActionSeries decide(const scenario::RsrpTrace& trace, const HandoverParams& params) {
    return run_stepper(trace, params);
}

infotheory::SymbolSeries to_symbols(const ActionSeries& actions) {
    infotheory::SymbolSeries out;
    out.alphabet_size = 2;
    out.symbols.reserve(actions.slots.size());
    for (const auto& s : actions.slots) out.symbols.push_back(s.handover_to ? 1 : 0);
    return out;
}

}  // namespace effcom::handover
