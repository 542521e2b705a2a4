#include "effcom/encoding.hpp"

#include <bit>
#include <cmath>

namespace effcom::encoding {

void BitWriter::push_bit(int bit) {
    if (bits_ % 8 == 0) bytes_.push_back(0);
    if (bit) bytes_.back() |= static_cast<std::uint8_t>(1u << (7 - bits_ % 8));
    ++bits_;
}

void BitWriter::push_bits(std::uint64_t value, int width) {
    for (int i = width - 1; i >= 0; --i) push_bit(static_cast<int>((value >> i) & 1u));
}

int BitReader::read_bit() {
    if (pos_ >= bit_count_) throw DecodeError(pos_, "truncated bitstream");
    const int bit = (bytes_[pos_ / 8] >> (7 - pos_ % 8)) & 1;
    ++pos_;
    return bit;
}

std::uint64_t BitReader::read_bits(int width) {
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i) v = (v << 1) | static_cast<std::uint64_t>(read_bit());
    return v;
}

void write_gamma(BitWriter& w, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("write_gamma: n must be >= 1");
    const int len = std::bit_width(n) - 1;  // floor(log2 n)
    for (int i = 0; i < len; ++i) w.push_bit(0);
    w.push_bits(n, len + 1);
}

std::uint64_t read_gamma(BitReader& r) {
    int zeros = 0;
    while (r.read_bit() == 0) {
        if (++zeros > 63) throw DecodeError(r.position(), "gamma prefix too long");
    }
    std::uint64_t n = 1;
    for (int i = 0; i < zeros; ++i) n = (n << 1) | static_cast<std::uint64_t>(r.read_bit());
    return n;
}

std::uint64_t zigzag(std::int64_t value) {
    return value >= 0 ? 2ull * static_cast<std::uint64_t>(value)
                      : 2ull * static_cast<std::uint64_t>(-value) - 1ull;
}

std::int64_t unzigzag(std::uint64_t coded) {
    return coded % 2 == 0 ? static_cast<std::int64_t>(coded / 2)
                          : -static_cast<std::int64_t>((coded + 1) / 2);
}

void CodecSpec::validate() const {
    if (bits_per_sample < 1) throw std::invalid_argument("CodecSpec: bits_per_sample must be >= 1");
    if (!(step_db > 0.0)) throw std::invalid_argument("CodecSpec: step_db must be > 0");
}

int quantize(double rsrp_dbm, double step_db) {
    return static_cast<int>(std::lround((rsrp_dbm - scenario::kRsrpMin) / step_db));
}

double dequantize(int level, double step_db) {
    return scenario::kRsrpMin + static_cast<double>(level) * step_db;
}

namespace {

std::vector<std::vector<int>> quantize_trace(const scenario::RsrpTrace& trace,
                                             const CodecSpec& spec) {
    std::vector<std::vector<int>> q(trace.slots(), std::vector<int>(trace.cells.size()));
    const int max_level = (1 << spec.bits_per_sample) - 1;
    for (std::size_t t = 0; t < trace.slots(); ++t)
        for (std::size_t c = 0; c < trace.cells.size(); ++c) {
            const int level = quantize(trace.rsrp[c][t], spec.step_db);
            if (level < 0 || level > max_level)
                throw std::invalid_argument(
                    "encode: quantized value " + std::to_string(level) + " overflows " +
                    std::to_string(spec.bits_per_sample) + "-bit sample field");
            q[t][c] = level;
        }
    return q;
}

Payload finish(const BitWriter& w) { return {w.bytes(), w.bit_count()}; }

}  // namespace

MessageLog encode_raw(const scenario::RsrpTrace& trace, const CodecSpec& spec) {
    spec.validate();
    trace.validate();
    const auto q = quantize_trace(trace, spec);

    MessageLog log;
    log.spec = spec;
    log.spec.kind = CodecKind::raw;
    log.cells = trace.cells.size();
    std::uint64_t total = 0;
    for (std::size_t t = 0; t < trace.slots(); ++t) {
        BitWriter w;
        for (std::size_t c = 0; c < log.cells; ++c)
            w.push_bits(static_cast<std::uint64_t>(q[t][c]), spec.bits_per_sample);
        total += w.bit_count();
        log.payloads.push_back(finish(w));
        log.cumulative_bits.push_back(total);
    }
    return log;
}

MessageLog encode_delta(const scenario::RsrpTrace& trace, const CodecSpec& spec) {
    spec.validate();
    trace.validate();
    const auto q = quantize_trace(trace, spec);

    MessageLog log;
    log.spec = spec;
    log.spec.kind = CodecKind::delta;
    log.cells = trace.cells.size();
    std::uint64_t total = 0;
    for (std::size_t t = 0; t < trace.slots(); ++t) {
        BitWriter w;
        for (std::size_t c = 0; c < log.cells; ++c) {
            if (t == 0) {
                w.push_bits(static_cast<std::uint64_t>(q[t][c]), spec.bits_per_sample);
            } else {
                const auto diff = static_cast<std::int64_t>(q[t][c] - q[t - 1][c]);
                write_gamma(w, zigzag(diff) + 1);
            }
        }
        total += w.bit_count();
        log.payloads.push_back(finish(w));
        log.cumulative_bits.push_back(total);
    }
    return log;
}

std::vector<std::vector<int>> decode(const MessageLog& log, const CodecSpec& spec) {
    spec.validate();
    if (log.cells == 0) throw std::invalid_argument("decode: log has no cells");
    std::vector<std::vector<int>> out;
    out.reserve(log.payloads.size());
    std::vector<int> prev(log.cells, 0);
    for (std::size_t t = 0; t < log.payloads.size(); ++t) {
        const auto& p = log.payloads[t];
        BitReader r(p.bytes, p.bit_count);
        std::vector<int> row(log.cells);
        for (std::size_t c = 0; c < log.cells; ++c) {
            if (spec.kind == CodecKind::raw || t == 0) {
                row[c] = static_cast<int>(r.read_bits(spec.bits_per_sample));
            } else {
                const std::uint64_t g = read_gamma(r);
                row[c] = prev[c] + static_cast<int>(unzigzag(g - 1));
            }
        }
        if (r.remaining() >= 8)
            throw DecodeError(r.position(), "trailing data beyond payload padding");
        prev = row;
        out.push_back(std::move(row));
    }
    return out;
}

std::vector<double> te_bound_bits(const infotheory::SymbolSeries& source,
                                  const infotheory::SymbolSeries& actions,
                                  const infotheory::TEConfig& cfg) {
    const auto est = infotheory::transfer_entropy(source, actions, cfg);
    std::vector<double> cum(est.local_bits.size(), 0.0);
    double acc = 0.0;
    for (std::size_t t = 0; t < est.local_bits.size(); ++t) {
        acc += std::max(est.local_bits[t], 0.0);
        cum[t] = acc;
    }
    return cum;
}

}  // namespace effcom::encoding
