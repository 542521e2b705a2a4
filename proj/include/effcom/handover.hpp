#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "effcom/infotheory.hpp"
#include "effcom/scenario.hpp"

namespace effcom::handover {

enum class Algorithm { a3_rsrp, a2_a4 };

struct HandoverParams {
    Algorithm algorithm = Algorithm::a3_rsrp;
    double hysteresis_db = 3.0;
    double a2_threshold = -110.0;  // dBm, serving below -> armed
    double a4_threshold = -100.0;  // dBm, neighbor above -> target
    int time_to_trigger = 2;       // slots

    void validate() const;
};

struct ActionSeries {
    struct Slot {
        std::size_t serving;                     // serving cell after this slot's decision
        std::optional<std::size_t> handover_to;  // set at handover slots
    };
    std::vector<Slot> slots;

    std::size_t handover_count() const;
    std::vector<std::size_t> handover_slots() const;
};

/// Slot-at-a-time handover decision engine (A3-RSRP or A2/A4).
class DecisionStepper {
   public:
    DecisionStepper(const HandoverParams& params, std::size_t cells);

    ActionSeries::Slot step(const std::vector<double>& rsrp_per_cell);
    std::size_t serving() const { return serving_; }

   private:
    HandoverParams params_;
    std::size_t cells_;
    std::size_t serving_ = 0;
    std::vector<int> trigger_counters_;  // A3: above serving+hyst; A2/A4: above a4
    int a2_counter_ = 0;
};

ActionSeries decide_a3(const scenario::RsrpTrace& trace, const HandoverParams& params);
ActionSeries decide_a2a4(const scenario::RsrpTrace& trace, const HandoverParams& params);
ActionSeries decide(const scenario::RsrpTrace& trace, const HandoverParams& params);

/// Binary series: 1 at handover slots, 0 elsewhere.
infotheory::SymbolSeries to_symbols(const ActionSeries& actions);

}  // namespace effcom::handover
