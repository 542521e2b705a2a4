#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "effcom/config.hpp"
#include "effcom/encoding.hpp"
#include "effcom/handover.hpp"
#include "effcom/infotheory.hpp"
#include "effcom/scenario.hpp"
#include "effcom/sensory.hpp"
#include "effcom/simloop.hpp"
#include "effcom/viability.hpp"

namespace fs = std::filesystem;
using namespace effcom;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

scenario::RsrpTrace trace_for_config(const cli::RunConfig& cfg) {
    if (cfg.trace_csv) return scenario::load_trace_csv_file(*cfg.trace_csv);
    return scenario::generate_trace(cfg.mobility, cfg.horizon);
}

void run_one_simulation(cli::RunConfig cfg, std::uint64_t seed, const std::string& out_dir) {
    cfg.seed = seed;
    cfg.mobility.seed = seed;
    cfg.sim.channel.seed = seed ^ 0x9e3779b97f4a7c15ull;
    auto trace = trace_for_config(cfg);
    cfg.horizon = trace.slots();
    cfg.sim.viability.horizon = trace.slots();
    auto report = simloop::run(trace, cfg.sim, seed);
    cli::write_report_files(report, trace, cfg, out_dir);
}

int cmd_simulate(const std::string& config_path, std::optional<std::uint64_t> seed_override,
                 const std::string& out_dir, const std::string& sweep) {
    cli::RunConfig cfg =
        config_path.empty() ? cli::RunConfig{} : cli::load_config_file(config_path);
    if (seed_override) cfg.seed = *seed_override;

    if (sweep.empty()) {
        run_one_simulation(cfg, cfg.seed, out_dir);
        std::cout << "report written to " << out_dir << "/report.json\n";
        return kExitOk;
    }

    const auto sep = sweep.find("..");
    if (sep == std::string::npos) throw CLI::ValidationError("--sweep expects the form a..b");
    const std::uint64_t first = std::stoull(sweep.substr(0, sep));
    const std::uint64_t last = std::stoull(sweep.substr(sep + 2));
    if (last < first) throw CLI::ValidationError("--sweep range is empty");

    std::vector<std::future<void>> jobs;
    for (std::uint64_t s = first; s <= last; ++s) {
        const std::string dir = out_dir + "/seed_" + std::to_string(s);
        jobs.push_back(std::async(std::launch::async,
                                  [cfg, s, dir] { run_one_simulation(cfg, s, dir); }));
    }
    for (auto& j : jobs) j.get();
    std::cout << (last - first + 1) << " reports written under " << out_dir << "\n";
    return kExitOk;
}

infotheory::SymbolSeries source_series(const scenario::RsrpTrace& trace, const std::string& column,
                                       const infotheory::BinningSpec& bins) {
    if (column == "diff") {
        // Sign of best-secondary-minus-primary RSRP.
        infotheory::SymbolSeries s{{}, 2};
        for (std::size_t t = 0; t < trace.slots(); ++t) {
            double best = -1e9;
            for (std::size_t c = 1; c < trace.cells.size(); ++c)
                best = std::max(best, trace.rsrp[c][t]);
            s.symbols.push_back(trace.cells.size() > 1 && best > trace.rsrp[0][t] ? 1 : 0);
        }
        return s;
    }
    for (std::size_t c = 0; c < trace.cells.size(); ++c)
        if (trace.cells[c] == column) return infotheory::discretize(trace.rsrp[c], bins).series;
    throw std::runtime_error("unknown source column '" + column + "'");
}

int cmd_te(const std::string& trace_path, const std::string& column, int k, int l, int bins,
           double lo, double hi, std::size_t window, std::size_t step,
           const std::string& algorithm, const std::string& out_path) {
    auto trace = scenario::load_trace_csv_file(trace_path);
    handover::HandoverParams params;
    params.algorithm =
        algorithm == "a2_a4" ? handover::Algorithm::a2_a4 : handover::Algorithm::a3_rsrp;
    const auto actions = handover::to_symbols(handover::decide(trace, params));
    const auto source = source_series(trace, column, {lo, hi, bins});

    infotheory::TEConfig cfg{k, l, infotheory::BiasCorrection::none};
    const auto global = infotheory::transfer_entropy(source, actions, cfg);
    std::cout << "global_te_bits=" << global.global_bits << " samples=" << global.samples_used
              << "\n";

    const auto windowed = infotheory::windowed_transfer_entropy(source, actions, cfg, window, step);
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + out_path + "'");
    out << "slot,te_bits\n";
    for (const auto& w : windowed) out << w.slot << ',' << w.bits << '\n';
    std::cout << "windowed TE written to " << out_path << "\n";
    return kExitOk;
}

int cmd_encode(const std::string& trace_path, const std::string& codec, int bits, double step_db,
               const std::string& out_path, bool verify) {
    auto trace = scenario::load_trace_csv_file(trace_path);
    encoding::CodecSpec spec;
    spec.kind = codec == "delta" ? encoding::CodecKind::delta : encoding::CodecKind::raw;
    spec.bits_per_sample = bits;
    spec.step_db = step_db;
    const auto log = spec.kind == encoding::CodecKind::raw ? encoding::encode_raw(trace, spec)
                                                           : encoding::encode_delta(trace, spec);

    std::cout << "codec=" << codec << " slots=" << log.payloads.size()
              << " total_bits=" << log.cumulative_bits.back() << "\n";
    if (verify) {
        const auto decoded = encoding::decode(log, spec);
        for (std::size_t t = 0; t < trace.slots(); ++t)
            for (std::size_t c = 0; c < trace.cells.size(); ++c)
                if (decoded[t][c] != encoding::quantize(trace.rsrp[c][t], spec.step_db))
                    throw std::runtime_error("round-trip mismatch at slot " + std::to_string(t));
        std::cout << "round-trip verified: exact reconstruction at quantized precision\n";
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + out_path + "'");
    out << "slot,cumulative_bits\n";
    for (std::size_t t = 0; t < log.cumulative_bits.size(); ++t)
        out << t << ',' << log.cumulative_bits[t] << '\n';
    return kExitOk;
}

int cmd_viability(std::size_t horizon, std::size_t deadline, std::size_t candidates,
                  double penalty, const std::string& prefix) {
    viability::ScenarioSpec spec{horizon, deadline, candidates, penalty};
    const auto curves = viability::fictitious_scenario(spec);
    {
        std::ofstream out(prefix + "_time.csv", std::ios::binary);
        out << "slot,full_info,no_info\n";
        for (std::size_t t = 0; t < horizon; ++t)
            out << t << ',' << curves.full_info.values[t] << ',' << curves.no_info.values[t]
                << '\n';
    }
    {
        std::ofstream out(prefix + "_info.csv", std::ios::binary);
        out << "bits,viability\n";
        const double h0 = std::log2(static_cast<double>(candidates));
        for (double b = 0.0; b <= h0 + 1e-9; b += 0.125)
            out << b << ',' << viability::viability_vs_information(b, spec) << '\n';
    }
    std::cout << "curves written to " << prefix << "_time.csv and " << prefix << "_info.csv\n";
    return kExitOk;
}

int cmd_sensory(double range, double resolution, double receptors, double rate, double distance,
                double speed) {
    const int bits = sensory::quantization_bits(range, resolution);
    const double bps = sensory::bitrate(receptors, bits, rate);
    const double delay = sensory::max_delay(distance, speed);
    std::cout << "quantization_bits " << bits << "\n"
              << "bitrate_bps " << bps << "\n"
              << "bitrate_mbps " << bps / 1e6 << "\n"
              << "max_delay_s " << delay << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"effcom: effective-communication simulator and analysis toolkit"};
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand("simulate", "run the sender/channel/receiver loop");
    std::string config_path, out_dir = "out", sweep;
    std::optional<std::uint64_t> seed_override;
    sim->add_option("--config", config_path, "JSON run configuration");
    sim->add_option("--seed", seed_override, "override the config seed");
    sim->add_option("--out", out_dir, "output directory");
    sim->add_option("--sweep", sweep, "seed range a..b, one run per seed");

    // te
    auto* te = app.add_subcommand("te", "transfer entropy from a trace CSV");
    std::string te_trace, te_source = "diff", te_algo = "a3_rsrp", te_out = "te.csv";
    int te_k = 1, te_l = 1, te_bins = 8;
    double te_lo = -140.0, te_hi = -44.0;
    std::size_t te_window = 10, te_step = 1;
    te->add_option("--trace", te_trace, "trace CSV path")->required();
    te->add_option("--source", te_source, "source column (cell name or 'diff')");
    te->add_option("--k", te_k, "target history length");
    te->add_option("--l", te_l, "source history length");
    te->add_option("--bins", te_bins, "discretization bins for cell columns");
    te->add_option("--lo", te_lo, "binning lower edge (dBm)");
    te->add_option("--hi", te_hi, "binning upper edge (dBm)");
    te->add_option("--window", te_window, "sliding window (slots)");
    te->add_option("--step", te_step, "window step (slots)");
    te->add_option("--algorithm", te_algo, "handover algorithm: a3_rsrp | a2_a4");
    te->add_option("--out", te_out, "windowed TE CSV output");

    // encode
    auto* enc = app.add_subcommand("encode", "encode a trace and report cumulative bits");
    std::string enc_trace, enc_codec = "raw", enc_out = "bits.csv";
    int enc_bits = 8;
    double enc_step = 1.0;
    bool enc_verify = false;
    enc->add_option("--trace", enc_trace, "trace CSV path")->required();
    enc->add_option("--codec", enc_codec, "raw | delta")
        ->check(CLI::IsMember({"raw", "delta"}));
    enc->add_option("--bits", enc_bits, "bits per raw sample");
    enc->add_option("--step-db", enc_step, "quantization step (dB)");
    enc->add_option("--out", enc_out, "cumulative-bits CSV output");
    enc->add_flag("--verify", enc_verify, "decode and check exact reconstruction");

    // viability
    auto* via = app.add_subcommand("viability", "fictitious handover viability curves");
    std::size_t via_horizon = 5, via_deadline = 3, via_candidates = 4;
    double via_penalty = -100.0;
    std::string via_prefix = "viability";
    via->add_option("--horizon", via_horizon, "slots");
    via->add_option("--deadline", via_deadline, "required handover slot");
    via->add_option("--candidates", via_candidates, "candidate handover instants");
    via->add_option("--penalty", via_penalty, "drop penalty");
    via->add_option("--out-prefix", via_prefix, "output file prefix");

    // sensory
    auto* sen = app.add_subcommand("sensory", "sensory bitrate and delay calculator");
    double sen_range = 40.0, sen_res = 0.02, sen_receptors = 48000.0, sen_rate = 50.0,
           sen_distance = 2.0, sen_speed = 30.0;
    sen->add_option("--range", sen_range, "measured range span");
    sen->add_option("--resolution", sen_res, "sensing resolution");
    sen->add_option("--receptors", sen_receptors, "receptor count");
    sen->add_option("--rate", sen_rate, "samples per second");
    sen->add_option("--distance", sen_distance, "receptor distance (m)");
    sen->add_option("--speed", sen_speed, "nerve conduction speed (m/s)");

    // trace
    auto* tr = app.add_subcommand("trace", "trace file utilities");
    tr->require_subcommand(1);
    auto* tr_validate = tr->add_subcommand("validate", "check a trace CSV");
    auto* tr_convert = tr->add_subcommand("convert", "normalize a trace CSV");
    auto* tr_generate = tr->add_subcommand("generate", "generate a synthetic trace");
    std::string tr_in, tr_out = "trace.csv";
    std::uint64_t tr_seed = 1;
    std::size_t tr_horizon = 60;
    scenario::MobilitySpec tr_spec;
    tr_validate->add_option("--in", tr_in, "input trace CSV")->required();
    tr_convert->add_option("--in", tr_in, "input trace CSV")->required();
    tr_convert->add_option("--out", tr_out, "output trace CSV");
    tr_generate->add_option("--seed", tr_seed, "generator seed");
    tr_generate->add_option("--horizon", tr_horizon, "slots");
    tr_generate->add_option("--out", tr_out, "output trace CSV");
    tr_generate->add_option("--speed", tr_spec.ue_speed, "UE speed (m/s)");
    tr_generate->add_option("--sigma", tr_spec.shadowing_sigma, "shadowing std (dB)");

    try {
        app.parse(argc, argv);

        if (*sim) return cmd_simulate(config_path, seed_override, out_dir, sweep);
        if (*te)
            return cmd_te(te_trace, te_source, te_k, te_l, te_bins, te_lo, te_hi, te_window,
                          te_step, te_algo, te_out);
        if (*enc) return cmd_encode(enc_trace, enc_codec, enc_bits, enc_step, enc_out, enc_verify);
        if (*via) return cmd_viability(via_horizon, via_deadline, via_candidates, via_penalty,
                                       via_prefix);
        if (*sen)
            return cmd_sensory(sen_range, sen_res, sen_receptors, sen_rate, sen_distance,
                               sen_speed);
        if (*tr_validate) {
            auto trace = scenario::load_trace_csv_file(tr_in);
            std::cout << "valid trace: " << trace.slots() << " slots, " << trace.cells.size()
                      << " cells, " << trace.clamped << " clamped values\n";
            return kExitOk;
        }
        if (*tr_convert) {
            scenario::save_trace_csv_file(scenario::load_trace_csv_file(tr_in), tr_out);
            std::cout << "normalized trace written to " << tr_out << "\n";
            return kExitOk;
        }
        if (*tr_generate) {
            tr_spec.seed = tr_seed;
            scenario::save_trace_csv_file(scenario::generate_trace(tr_spec, tr_horizon), tr_out);
            std::cout << "trace written to " << tr_out << "\n";
            return kExitOk;
        }
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    } catch (const scenario::ParseError& e) {
        std::cerr << "trace parse error: " << e.what() << "\n";
        return kExitData;
    } catch (const encoding::DecodeError& e) {
        std::cerr << "decode error: " << e.what() << "\n";
        return kExitData;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
}
