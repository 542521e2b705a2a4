#include "effcom/simloop.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace effcom::simloop {

void SenderPolicy::validate() const {
    if (kind == PolicyKind::event_triggered && !(trigger_threshold_db > 0.0))
        throw std::invalid_argument("SenderPolicy: trigger threshold must be > 0");
}

void ChannelSpec::validate() const {
    if (loss_probability < 0.0 || loss_probability > 1.0)
        throw std::invalid_argument("ChannelSpec: loss_probability must be in [0, 1]");
}

void SimConfig::validate(std::size_t horizon, std::size_t cells) const {
    viability.validate();
    handover.validate();
    codec.validate();
    channel.validate();
    policy.validate();
    te.validate();
    if (cells < 1) throw std::invalid_argument("SimConfig: trace has no cells");
    if (viability.horizon != horizon)
        throw std::invalid_argument("SimConfig: viability horizon does not match trace length");
    const int max_level = encoding::quantize(scenario::kRsrpMax, codec.step_db);
    if (max_level > (1 << codec.bits_per_sample) - 1)
        throw std::invalid_argument("SimConfig: codec sample width too narrow for RSRP range");
}

Simulator::Simulator(const scenario::RsrpTrace& trace, const SimConfig& config, std::uint64_t seed)
    : trace_(trace),
      config_(config),
      seed_(seed),
      channel_rng_(config.channel.seed != 0 ? config.channel.seed : seed),
      receiver_decider_(config.handover, trace.cells.size()) {
    trace_.validate();
    config_.validate(trace_.slots(), trace_.cells.size());

    quantized_.assign(trace_.slots(), std::vector<int>(trace_.cells.size(), 0));
    for (std::size_t t = 0; t < trace_.slots(); ++t)
        for (std::size_t c = 0; c < trace_.cells.size(); ++c)
            quantized_[t][c] = encoding::quantize(trace_.rsrp[c][t], config_.codec.step_db);

    receiver_.last_decoded.assign(trace_.cells.size(), 0);
    receiver_.codec = config_.codec;
    surrogate_.knowledge = receiver_;
    records_.reserve(trace_.slots());
}

encoding::Payload Simulator::make_payload(std::size_t, bool absolute,
                                          const std::vector<int>& levels) const {
    encoding::BitWriter w;
    for (std::size_t c = 0; c < levels.size(); ++c) {
        if (absolute) {
            w.push_bits(static_cast<std::uint64_t>(levels[c]), config_.codec.bits_per_sample);
        } else {
            const auto diff = static_cast<std::int64_t>(
                levels[c] - surrogate_.knowledge.last_decoded[c]);
            encoding::write_gamma(w, encoding::zigzag(diff) + 1);
        }
    }
    return {w.bytes(), w.bit_count()};
}

bool Simulator::apply_payload(std::size_t sent_slot, const encoding::Payload& payload,
                              KnowledgeState& state) const {
    const bool absolute = config_.policy.kind == PolicyKind::always_raw || sent_slot == 0;
    try {
        encoding::BitReader r(payload.bytes, payload.bit_count);
        std::vector<int> row(state.last_decoded.size());
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (absolute) {
                row[c] = static_cast<int>(r.read_bits(config_.codec.bits_per_sample));
            } else {
                const std::uint64_t g = encoding::read_gamma(r);
                row[c] = state.last_decoded[c] + static_cast<int>(encoding::unzigzag(g - 1));
            }
        }
        state.last_decoded = std::move(row);
        ++state.updates_seen;
        return true;
    } catch (const encoding::DecodeError&) {
        return false;
    }
}

SlotRecord Simulator::step() {
    if (done()) throw std::logic_error("Simulator::step past the horizon");
    const std::size_t t = slot_;
    SlotRecord rec;
    rec.slot = t;

    // Sender: decide whether this slot's observation is worth a message,
    // using the surrogate as the receiver's assumed state.
    const std::vector<int>& levels = quantized_[t];
    bool send = true;
    if (config_.policy.kind == PolicyKind::event_triggered && t > 0) {
        double max_change = 0.0;
        for (std::size_t c = 0; c < levels.size(); ++c)
            max_change = std::max(max_change,
                                  std::abs(static_cast<double>(levels[c] -
                                                               surrogate_.knowledge.last_decoded[c]) *
                                           config_.codec.step_db));
        send = max_change >= config_.policy.trigger_threshold_db;
    }

    if (send) {
        const bool absolute = config_.policy.kind == PolicyKind::always_raw || t == 0;
        encoding::Payload payload = make_payload(t, absolute, levels);
        rec.sent = true;
        rec.bits_sent = payload.bit_count;
        surrogate_.knowledge.last_decoded = levels;
        ++surrogate_.knowledge.updates_seen;

        const bool lost = std::uniform_real_distribution<double>(0.0, 1.0)(channel_rng_) <
                          config_.channel.loss_probability;
        if (lost)
            ++messages_lost_;
        else
            in_flight_.push_back({t + config_.channel.delay, t, std::move(payload)});
        sent_lost_.push_back(lost);
    } else {
        sent_lost_.push_back(false);
    }
    sent_flags_.push_back(send);

    // Channel delivery: messages scheduled for this slot.
    bool due = false, arrived = false;
    if (t >= config_.channel.delay) {
        const std::size_t origin = t - config_.channel.delay;
        due = sent_flags_[origin];
        if (due && !sent_lost_[origin]) {
            const InFlight msg = in_flight_.front();
            in_flight_.pop_front();
            if (apply_payload(msg.sent_slot, msg.payload, receiver_)) {
                arrived = true;
            } else {
                ++decode_errors_;
            }
        }
    }

    // Receiver belief: fresh on arrival, widened one candidate per missed
    // message; intentional sender silence does not widen it.
    if (arrived) {
        stale_slots_ = 0;
        any_arrival_ = true;
        rec.delivered = true;
    } else if (!any_arrival_) {
        stale_slots_ = t + 1;
    } else if (due) {
        ++stale_slots_;
    }

    // Receiver acts on its decoded view of the measurements.
    std::vector<double> view(receiver_.last_decoded.size());
    for (std::size_t c = 0; c < view.size(); ++c)
        view[c] = encoding::dequantize(receiver_.last_decoded[c], config_.codec.step_db);
    rec.action = receiver_decider_.step(view);
    surrogate_.last_action = rec.action;

    if (t == config_.viability.deadline) stale_at_deadline_ = stale_slots_;
    if (t == config_.viability.deadline + 1 && stale_at_deadline_ > 0) dropped_ = true;

    rec.belief_support =
        std::min<std::size_t>(1 + stale_slots_, config_.viability.candidate_instants);
    rec.viability = dropped_ ? config_.viability.drop_penalty
                             : -std::log2(static_cast<double>(rec.belief_support));

    records_.push_back(rec);
    ++slot_;
    return rec;
}

SimReport Simulator::finish() {
    if (!done()) throw std::logic_error("Simulator::finish before the horizon");

    SimReport rep;
    rep.seed = seed_;
    rep.events = trace_.events;
    rep.clamped = trace_.clamped;
    rep.messages_lost = messages_lost_;
    rep.decode_errors = decode_errors_;

    std::uint64_t sent_total = 0;
    for (const auto& r : records_) {
        rep.viability.push_back(r.viability);
        sent_total += r.bits_sent;
        rep.sent_cum_bits.push_back(sent_total);
        rep.actions.push_back(r.action.handover_to ? 1 : 0);
        rep.serving.push_back(r.action.serving);
        if (r.action.handover_to) rep.handover_slots.push_back(r.slot);
        if (r.sent) ++rep.messages_sent;
    }
    for (std::size_t t = 0; t < rep.viability.size(); ++t) {
        if (rep.viability[t] == config_.viability.drop_penalty) {
            rep.drop_slot = t;
            break;
        }
    }

    encoding::CodecSpec raw_spec = config_.codec;
    raw_spec.kind = encoding::CodecKind::raw;
    rep.raw_cum_bits = encoding::encode_raw(trace_, raw_spec).cumulative_bits;
    encoding::CodecSpec delta_spec = config_.codec;
    delta_spec.kind = encoding::CodecKind::delta;
    rep.delta_cum_bits = encoding::encode_delta(trace_, delta_spec).cumulative_bits;

    // Information lower bound: sign of the best-secondary-vs-primary RSRP
    // difference as source, the receiver's handover indicator as target.
    infotheory::SymbolSeries source{{}, 2};
    for (std::size_t t = 0; t < trace_.slots(); ++t) {
        double best = -1e9;
        for (std::size_t c = 1; c < trace_.cells.size(); ++c)
            best = std::max(best, trace_.rsrp[c][t]);
        source.symbols.push_back(trace_.cells.size() > 1 && best > trace_.rsrp[0][t] ? 1 : 0);
    }
    infotheory::SymbolSeries target{rep.actions, 2};
    const std::size_t maxh = static_cast<std::size_t>(std::max(config_.te.k, config_.te.l));
    if (trace_.slots() > maxh + 1)
        rep.te_bound_cum = encoding::te_bound_bits(source, target, config_.te);
    else
        rep.te_bound_cum.assign(trace_.slots(), 0.0);
    return rep;
}

SimReport Simulator::run() {
    while (!done()) step();
    return finish();
}

SimReport run(const scenario::RsrpTrace& trace, const SimConfig& config, std::uint64_t seed) {
    Simulator sim(trace, config, seed);
    return sim.run();
}

}  // namespace effcom::simloop
