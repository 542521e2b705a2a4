#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace effcom::infotheory {

/// Probability distribution over a finite alphabet.
struct ProbDist {
    std::vector<double> probs;

    void validate() const;  // throws std::invalid_argument
};

/// Integer time series over the alphabet [0, alphabet_size).
struct SymbolSeries {
    std::vector<int> symbols;
    int alphabet_size = 2;

    std::size_t size() const { return symbols.size(); }
    void validate() const;
};

/// Equal-width binning of a real-valued range into `bins` symbols.
struct BinningSpec {
    double lo = -140.0;
    double hi = -44.0;
    int bins = 8;

    double width() const { return (hi - lo) / bins; }
    void validate() const;
};

enum class BiasCorrection { none, miller_madow };

struct TEConfig {
    int k = 1;  // target history length (slots)
    int l = 1;  // source history length (slots)
    BiasCorrection bias_correction = BiasCorrection::none;

    void validate() const;
};

struct TEEstimate {
    double global_bits = 0.0;
    std::vector<double> local_bits;  // full length; zero before first_valid
    std::size_t first_valid = 0;     // == max(k, l)
    TEConfig config;
    std::size_t samples_used = 0;
    // Filled only when config.bias_correction == miller_madow; the plug-in
    // value stays in global_bits so mean(local) == global always holds.
    std::optional<double> bias_corrected_bits;
};

struct WindowedTE {
    std::size_t slot;  // window-end slot
    double bits;
};

struct Discretized {
    SymbolSeries series;
    std::size_t clamped = 0;
};

double shannon_entropy(const ProbDist& p);

ProbDist empirical_distribution(const SymbolSeries& x);

double mutual_information(const SymbolSeries& x, const SymbolSeries& y);

/// Schreiber transfer entropy source -> target from plug-in counts over
/// embedded (x_t, x-history, y-history) tuples. Bits per slot.
TEEstimate transfer_entropy(const SymbolSeries& source, const SymbolSeries& target,
                            const TEConfig& cfg);

std::vector<WindowedTE> windowed_transfer_entropy(const SymbolSeries& source,
                                                  const SymbolSeries& target,
                                                  const TEConfig& cfg,
                                                  std::size_t window, std::size_t step);

/// h_plugin + (distinct_outcomes - 1) / (2 n ln 2)
double miller_madow(double h_plugin, std::size_t distinct_outcomes, std::size_t n);

/// Out-of-range values clamp to the edge bins and are counted, not rejected.
Discretized discretize(const std::vector<double>& values, const BinningSpec& spec);

}  // namespace effcom::infotheory
