#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <random>
#include <vector>

#include "effcom/encoding.hpp"
#include "effcom/handover.hpp"
#include "effcom/infotheory.hpp"
#include "effcom/scenario.hpp"
#include "effcom/viability.hpp"

namespace effcom::simloop {

enum class PolicyKind { always_raw, always_delta, event_triggered };

struct SenderPolicy {
    PolicyKind kind = PolicyKind::always_raw;
    double trigger_threshold_db = 3.0;  // event_triggered only

    void validate() const;
};

struct ChannelSpec {
    double loss_probability = 0.0;
    std::size_t delay = 0;  // slots
    std::uint64_t seed = 0;  // 0: derive from the run seed

    void validate() const;
};

struct KnowledgeState {
    std::vector<int> last_decoded;  // per-cell quantized levels
    encoding::CodecSpec codec;
    std::size_t updates_seen = 0;
};

struct SurrogateState {
    KnowledgeState knowledge;
    std::optional<handover::ActionSeries::Slot> last_action;
};

struct SimConfig {
    viability::ScenarioSpec viability{60, 30, 4, -100.0};
    handover::HandoverParams handover;
    encoding::CodecSpec codec;
    ChannelSpec channel;
    SenderPolicy policy;
    infotheory::TEConfig te;
    std::size_t te_window = 10;
    std::size_t te_step = 1;

    void validate(std::size_t horizon, std::size_t cells) const;
};

struct SlotRecord {
    std::size_t slot = 0;
    bool sent = false;
    bool delivered = false;
    std::uint64_t bits_sent = 0;
    std::size_t belief_support = 1;
    double viability = 0.0;
    handover::ActionSeries::Slot action{0, std::nullopt};
};

struct SimReport {
    std::uint64_t seed = 0;
    std::vector<double> viability;             // per slot
    std::vector<std::uint64_t> raw_cum_bits;   // raw codec over the full trace
    std::vector<std::uint64_t> delta_cum_bits; // delta codec over the full trace
    std::vector<std::uint64_t> sent_cum_bits;  // what the policy actually sent
    std::vector<double> te_bound_cum;          // clipped local-TE running sum
    std::vector<int> actions;                  // 1 at handover slots
    std::vector<std::size_t> serving;          // receiver-side serving cell
    std::vector<scenario::Event> events;       // trace events echoed
    std::vector<std::size_t> handover_slots;
    std::optional<std::size_t> drop_slot;
    std::size_t clamped = 0;
    std::size_t messages_sent = 0;
    std::size_t messages_lost = 0;
    std::size_t decode_errors = 0;
};

/// One sender/channel/receiver loop over a fixed trace. The knowledge
/// accumulator is a decoder plus last-value store; the sender keeps a
/// surrogate copy that diverges from the receiver only under loss.
class Simulator {
   public:
    Simulator(const scenario::RsrpTrace& trace, const SimConfig& config, std::uint64_t seed);

    SlotRecord step();
    bool done() const { return slot_ >= trace_.slots(); }
    SimReport finish();  // computes trace-level series; call after the loop
    SimReport run();

    const KnowledgeState& receiver_knowledge() const { return receiver_; }
    const SurrogateState& surrogate() const { return surrogate_; }

   private:
    struct InFlight {
        std::size_t arrive_slot;
        std::size_t sent_slot;
        encoding::Payload payload;
    };

    encoding::Payload make_payload(std::size_t slot, bool absolute,
                                   const std::vector<int>& levels) const;
    bool apply_payload(std::size_t sent_slot, const encoding::Payload& payload,
                       KnowledgeState& state) const;

    scenario::RsrpTrace trace_;
    SimConfig config_;
    std::uint64_t seed_ = 0;
    std::vector<std::vector<int>> quantized_;  // [slot][cell]
    std::mt19937_64 channel_rng_;

    std::size_t slot_ = 0;
    KnowledgeState receiver_;
    SurrogateState surrogate_;
    handover::DecisionStepper receiver_decider_;
    std::deque<InFlight> in_flight_;
    std::vector<char> sent_flags_;  // per slot: a message was sent
    std::vector<char> sent_lost_;   // per slot: the sent message was lost
    std::size_t stale_slots_ = 0;
    bool any_arrival_ = false;
    bool dropped_ = false;
    std::size_t stale_at_deadline_ = 0;
    std::vector<SlotRecord> records_;
    std::size_t messages_lost_ = 0;
    std::size_t decode_errors_ = 0;
};

SimReport run(const scenario::RsrpTrace& trace, const SimConfig& config, std::uint64_t seed);

}  // namespace effcom::simloop
