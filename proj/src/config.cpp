#include "effcom/config.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace effcom::cli {

using nlohmann::json;

namespace {

template <typename T>
void get_if(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

simloop::PolicyKind policy_kind_from_name(const std::string& name) {
    if (name == "always_raw") return simloop::PolicyKind::always_raw;
    if (name == "always_delta") return simloop::PolicyKind::always_delta;
    if (name == "event_triggered") return simloop::PolicyKind::event_triggered;
    throw std::invalid_argument("unknown policy kind '" + name + "'");
}

const char* policy_kind_name(simloop::PolicyKind k) {
    switch (k) {
        case simloop::PolicyKind::always_raw: return "always_raw";
        case simloop::PolicyKind::always_delta: return "always_delta";
        default: return "event_triggered";
    }
}

encoding::CodecKind codec_kind_from_name(const std::string& name) {
    if (name == "raw") return encoding::CodecKind::raw;
    if (name == "delta") return encoding::CodecKind::delta;
    throw std::invalid_argument("unknown codec kind '" + name + "'");
}

handover::Algorithm algorithm_from_name(const std::string& name) {
    if (name == "a3_rsrp") return handover::Algorithm::a3_rsrp;
    if (name == "a2_a4") return handover::Algorithm::a2_a4;
    throw std::invalid_argument("unknown handover algorithm '" + name + "'");
}

infotheory::BiasCorrection bias_from_name(const std::string& name) {
    if (name == "none") return infotheory::BiasCorrection::none;
    if (name == "miller_madow") return infotheory::BiasCorrection::miller_madow;
    throw std::invalid_argument("unknown bias correction '" + name + "'");
}

}  // namespace

RunConfig config_from_json(const json& j) {
    RunConfig cfg;
    get_if(j, "seed", cfg.seed);
    get_if(j, "horizon", cfg.horizon);
    if (j.contains("trace_csv")) cfg.trace_csv = j.at("trace_csv").get<std::string>();

    if (j.contains("scenario")) {
        const auto& s = j.at("scenario");
        get_if(s, "bs_positions", cfg.mobility.bs_positions);
        get_if(s, "ue_speed", cfg.mobility.ue_speed);
        get_if(s, "route_length", cfg.mobility.route_length);
        get_if(s, "tx_power_at_ref", cfg.mobility.tx_power_at_ref);
        get_if(s, "ref_distance", cfg.mobility.ref_distance);
        get_if(s, "pathloss_exponent", cfg.mobility.pathloss_exponent);
        get_if(s, "shadowing_sigma", cfg.mobility.shadowing_sigma);
        get_if(s, "shadowing_correlation", cfg.mobility.shadowing_correlation);
        get_if(s, "slot_duration", cfg.mobility.slot_duration);
    }
    cfg.mobility.seed = cfg.seed;

    if (j.contains("handover")) {
        const auto& h = j.at("handover");
        if (h.contains("algorithm"))
            cfg.sim.handover.algorithm = algorithm_from_name(h.at("algorithm").get<std::string>());
        get_if(h, "hysteresis_db", cfg.sim.handover.hysteresis_db);
        get_if(h, "a2_threshold", cfg.sim.handover.a2_threshold);
        get_if(h, "a4_threshold", cfg.sim.handover.a4_threshold);
        get_if(h, "time_to_trigger", cfg.sim.handover.time_to_trigger);
    }
    if (j.contains("codec")) {
        const auto& c = j.at("codec");
        if (c.contains("kind")) cfg.sim.codec.kind = codec_kind_from_name(c.at("kind").get<std::string>());
        get_if(c, "bits_per_sample", cfg.sim.codec.bits_per_sample);
        get_if(c, "step_db", cfg.sim.codec.step_db);
    }
    if (j.contains("channel")) {
        const auto& c = j.at("channel");
        get_if(c, "loss_probability", cfg.sim.channel.loss_probability);
        get_if(c, "delay", cfg.sim.channel.delay);
        get_if(c, "seed", cfg.sim.channel.seed);
    }
    if (cfg.sim.channel.seed == 0) cfg.sim.channel.seed = cfg.seed ^ 0x9e3779b97f4a7c15ull;

    if (j.contains("policy")) {
        const auto& p = j.at("policy");
        if (p.contains("kind")) cfg.sim.policy.kind = policy_kind_from_name(p.at("kind").get<std::string>());
        get_if(p, "trigger_threshold_db", cfg.sim.policy.trigger_threshold_db);
    }
    if (j.contains("te")) {
        const auto& t = j.at("te");
        get_if(t, "k", cfg.sim.te.k);
        get_if(t, "l", cfg.sim.te.l);
        if (t.contains("bias_correction"))
            cfg.sim.te.bias_correction = bias_from_name(t.at("bias_correction").get<std::string>());
        get_if(t, "window", cfg.sim.te_window);
        get_if(t, "step", cfg.sim.te_step);
    }
    if (j.contains("viability")) {
        const auto& v = j.at("viability");
        get_if(v, "deadline", cfg.sim.viability.deadline);
        get_if(v, "candidate_instants", cfg.sim.viability.candidate_instants);
        get_if(v, "drop_penalty", cfg.sim.viability.drop_penalty);
    }
    cfg.sim.viability.horizon = cfg.horizon;
    return cfg;
}

json config_to_json(const RunConfig& cfg) {
    json j;
    j["seed"] = cfg.seed;
    j["horizon"] = cfg.horizon;
    if (cfg.trace_csv) j["trace_csv"] = *cfg.trace_csv;
    j["scenario"] = {{"bs_positions", cfg.mobility.bs_positions},
                     {"ue_speed", cfg.mobility.ue_speed},
                     {"route_length", cfg.mobility.route_length},
                     {"tx_power_at_ref", cfg.mobility.tx_power_at_ref},
                     {"ref_distance", cfg.mobility.ref_distance},
                     {"pathloss_exponent", cfg.mobility.pathloss_exponent},
                     {"shadowing_sigma", cfg.mobility.shadowing_sigma},
                     {"shadowing_correlation", cfg.mobility.shadowing_correlation},
                     {"slot_duration", cfg.mobility.slot_duration}};
    j["handover"] = {{"algorithm", cfg.sim.handover.algorithm == handover::Algorithm::a3_rsrp
                                       ? "a3_rsrp"
                                       : "a2_a4"},
                     {"hysteresis_db", cfg.sim.handover.hysteresis_db},
                     {"a2_threshold", cfg.sim.handover.a2_threshold},
                     {"a4_threshold", cfg.sim.handover.a4_threshold},
                     {"time_to_trigger", cfg.sim.handover.time_to_trigger}};
    j["codec"] = {{"kind", cfg.sim.codec.kind == encoding::CodecKind::raw ? "raw" : "delta"},
                  {"bits_per_sample", cfg.sim.codec.bits_per_sample},
                  {"step_db", cfg.sim.codec.step_db}};
    j["channel"] = {{"loss_probability", cfg.sim.channel.loss_probability},
                    {"delay", cfg.sim.channel.delay},
                    {"seed", cfg.sim.channel.seed}};
    j["policy"] = {{"kind", policy_kind_name(cfg.sim.policy.kind)},
                   {"trigger_threshold_db", cfg.sim.policy.trigger_threshold_db}};
    j["te"] = {{"k", cfg.sim.te.k},
               {"l", cfg.sim.te.l},
               {"bias_correction", cfg.sim.te.bias_correction == infotheory::BiasCorrection::none
                                       ? "none"
                                       : "miller_madow"},
               {"window", cfg.sim.te_window},
               {"step", cfg.sim.te_step}};
    j["viability"] = {{"deadline", cfg.sim.viability.deadline},
                      {"candidate_instants", cfg.sim.viability.candidate_instants},
                      {"drop_penalty", cfg.sim.viability.drop_penalty}};
    return j;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    json j;
    in >> j;
    return config_from_json(j);
}

json report_to_json(const simloop::SimReport& report, const RunConfig& cfg) {
    json j;
    j["config"] = config_to_json(cfg);
    j["seed"] = report.seed;
    j["viability"] = report.viability;
    j["raw_cum_bits"] = report.raw_cum_bits;
    j["delta_cum_bits"] = report.delta_cum_bits;
    j["sent_cum_bits"] = report.sent_cum_bits;
    j["te_bound_cum"] = report.te_bound_cum;
    j["actions"] = report.actions;
    j["serving"] = report.serving;
    j["handover_slots"] = report.handover_slots;
    if (report.drop_slot)
        j["drop_slot"] = *report.drop_slot;
    else
        j["drop_slot"] = nullptr;
    json ev = json::array();
    for (auto e : report.events) ev.push_back(scenario::event_name(e));
    j["events"] = ev;
    j["counters"] = {{"clamped", report.clamped},
                     {"messages_sent", report.messages_sent},
                     {"messages_lost", report.messages_lost},
                     {"decode_errors", report.decode_errors}};
    return j;
}

void write_report_files(const simloop::SimReport& report, const scenario::RsrpTrace& trace,
                        const RunConfig& cfg, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);

    {
        std::ofstream out(fs::path(out_dir) / "report.json", std::ios::binary);
        out << report_to_json(report, cfg).dump(2) << '\n';
    }
    {
        std::ofstream out(fs::path(out_dir) / "viability.csv", std::ios::binary);
        out << "slot,viability\n";
        for (std::size_t t = 0; t < report.viability.size(); ++t)
            out << t << ',' << report.viability[t] << '\n';
    }
    {
        std::ofstream out(fs::path(out_dir) / "bits.csv", std::ios::binary);
        out << "slot,raw_cum,delta_cum,sent_cum,te_bound_cum\n";
        for (std::size_t t = 0; t < report.raw_cum_bits.size(); ++t)
            out << t << ',' << report.raw_cum_bits[t] << ',' << report.delta_cum_bits[t] << ','
                << report.sent_cum_bits[t] << ',' << report.te_bound_cum[t] << '\n';
    }
    {
        std::ofstream out(fs::path(out_dir) / "actions.csv", std::ios::binary);
        out << "slot,action,serving,event\n";
        for (std::size_t t = 0; t < report.actions.size(); ++t)
            out << t << ',' << report.actions[t] << ',' << report.serving[t] << ','
                << scenario::event_name(report.events[t]) << '\n';
    }
    scenario::save_trace_csv_file(trace, (fs::path(out_dir) / "trace.csv").string());
}

}  // namespace effcom::cli
