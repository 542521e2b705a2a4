#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "effcom/infotheory.hpp"
#include "effcom/scenario.hpp"

namespace effcom::encoding {

struct DecodeError : std::runtime_error {
    std::size_t bit_offset;
    DecodeError(std::size_t offset, const std::string& what_)
        : std::runtime_error("bit " + std::to_string(offset) + ": " + what_), bit_offset(offset) {}
};

/// MSB-first bit sink backed by a byte vector, zero-padded at the end.
class BitWriter {
   public:
    void push_bit(int bit);
    void push_bits(std::uint64_t value, int width);  // MSB first
    std::size_t bit_count() const { return bits_; }
    const std::vector<std::uint8_t>& bytes() const { return bytes_; }

   private:
    std::vector<std::uint8_t> bytes_;
    std::size_t bits_ = 0;
};

class BitReader {
   public:
    BitReader(const std::vector<std::uint8_t>& bytes, std::size_t bit_count)
        : bytes_(bytes), bit_count_(bit_count) {}

    int read_bit();                           // throws DecodeError past the end
    std::uint64_t read_bits(int width);
    std::size_t position() const { return pos_; }
    std::size_t remaining() const { return bit_count_ - pos_; }

   private:
    const std::vector<std::uint8_t>& bytes_;
    std::size_t bit_count_;
    std::size_t pos_ = 0;
};

/// Elias gamma over n >= 1: floor(log2 n) zeros, then n in binary.
void write_gamma(BitWriter& w, std::uint64_t n);
std::uint64_t read_gamma(BitReader& r);

/// value >= 0 -> even, value < 0 -> odd.
std::uint64_t zigzag(std::int64_t value);
std::int64_t unzigzag(std::uint64_t coded);

enum class CodecKind { raw, delta };

struct CodecSpec {
    CodecKind kind = CodecKind::raw;
    int bits_per_sample = 8;  // raw sample width
    double step_db = 1.0;     // quantization step

    void validate() const;
};

struct Payload {
    std::vector<std::uint8_t> bytes;
    std::size_t bit_count = 0;  // padding = bytes.size()*8 - bit_count
};

struct MessageLog {
    std::vector<Payload> payloads;               // one per slot
    std::vector<std::uint64_t> cumulative_bits;  // nondecreasing
    CodecSpec spec;
    std::size_t cells = 0;
};

int quantize(double rsrp_dbm, double step_db);        // round((v + 140) / step)
double dequantize(int level, double step_db);

MessageLog encode_raw(const scenario::RsrpTrace& trace, const CodecSpec& spec);

/// Slot 0 carries raw quantized samples; later slots carry per-cell
/// zigzag + Elias-gamma coded differences.
MessageLog encode_delta(const scenario::RsrpTrace& trace, const CodecSpec& spec);

/// Exact reconstruction of the quantized samples, [slot][cell].
std::vector<std::vector<int>> decode(const MessageLog& log, const CodecSpec& spec);

/// Cumulative information lower bound: running sum of local transfer entropy
/// with negative pointwise values clipped at zero.
std::vector<double> te_bound_bits(const infotheory::SymbolSeries& source,
                                  const infotheory::SymbolSeries& actions,
                                  const infotheory::TEConfig& cfg);

}  // namespace effcom::encoding
