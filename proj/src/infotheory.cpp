#include "effcom/infotheory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace effcom::infotheory {

namespace {

constexpr double kLn2 = 0.6931471805599453;

double log2_ratio(double num, double den) { return std::log2(num / den); }

// H from raw counts: log2(n) - (1/n) * sum c*log2(c). More stable than
// normalizing first.
double entropy_from_counts(const std::unordered_map<std::uint64_t, std::uint64_t>& counts,
                           std::uint64_t n) {
    double acc = 0.0;
    for (const auto& [key, c] : counts) {
        (void)key;
        acc += static_cast<double>(c) * std::log2(static_cast<double>(c));
    }
    return std::log2(static_cast<double>(n)) - acc / static_cast<double>(n);
}

}  // namespace

void ProbDist::validate() const {
    double sum = 0.0;
    for (double p : probs) {
        if (!(p >= 0.0)) throw std::invalid_argument("ProbDist: negative probability");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("ProbDist: probabilities sum to " + std::to_string(sum) +
                                    ", expected 1");
}

void SymbolSeries::validate() const {
    if (alphabet_size <= 0) throw std::invalid_argument("SymbolSeries: alphabet_size must be positive");
    for (int s : symbols) {
        if (s < 0 || s >= alphabet_size)
            throw std::invalid_argument("SymbolSeries: symbol " + std::to_string(s) +
                                        " outside [0, " + std::to_string(alphabet_size) + ")");
    }
}

void BinningSpec::validate() const {
    if (!(lo < hi)) throw std::invalid_argument("BinningSpec: lo must be < hi");
    if (bins < 2) throw std::invalid_argument("BinningSpec: bins must be >= 2");
}

void TEConfig::validate() const {
    if (k < 1) throw std::invalid_argument("TEConfig: k must be >= 1");
    if (l < 1) throw std::invalid_argument("TEConfig: l must be >= 1");
}

double shannon_entropy(const ProbDist& p) {
    p.validate();
    double h = 0.0;
    for (double pi : p.probs) {
        if (pi > 0.0) h -= pi * std::log2(pi);
    }
    return std::max(h, 0.0);
}

ProbDist empirical_distribution(const SymbolSeries& x) {
    x.validate();
    if (x.symbols.empty()) throw std::invalid_argument("empirical_distribution: empty series");
    std::vector<double> probs(static_cast<std::size_t>(x.alphabet_size), 0.0);
    const double inv = 1.0 / static_cast<double>(x.symbols.size());
    for (int s : x.symbols) probs[static_cast<std::size_t>(s)] += inv;
    return ProbDist{std::move(probs)};
}

double mutual_information(const SymbolSeries& x, const SymbolSeries& y) {
    x.validate();
    y.validate();
    if (x.size() != y.size())
        throw std::invalid_argument("mutual_information: series lengths differ");
    if (x.symbols.empty()) throw std::invalid_argument("mutual_information: empty series");

    const std::size_t n = x.size();
    std::unordered_map<std::uint64_t, std::uint64_t> cx, cy, cxy;
    for (std::size_t t = 0; t < n; ++t) {
        const auto xs = static_cast<std::uint64_t>(x.symbols[t]);
        const auto ys = static_cast<std::uint64_t>(y.symbols[t]);
        ++cx[xs];
        ++cy[ys];
        ++cxy[xs * static_cast<std::uint64_t>(y.alphabet_size) + ys];
    }
    const double mi = entropy_from_counts(cx, n) + entropy_from_counts(cy, n) -
                      entropy_from_counts(cxy, n);
    return std::max(mi, 0.0);
}

TEEstimate transfer_entropy(const SymbolSeries& source, const SymbolSeries& target,
                            const TEConfig& cfg) {
    source.validate();
    target.validate();
    cfg.validate();
    if (source.size() != target.size())
        throw std::invalid_argument("transfer_entropy: series lengths differ");

    const std::size_t k = static_cast<std::size_t>(cfg.k);
    const std::size_t l = static_cast<std::size_t>(cfg.l);
    const std::size_t maxh = std::max(k, l);
    const std::size_t n = target.size();
    if (n <= maxh + 1)
        throw std::invalid_argument("transfer_entropy: series too short for embedding, need at "
                                    "least max(k,l)+2 = " + std::to_string(maxh + 2) + " samples");

    const double at = static_cast<double>(target.alphabet_size);
    const double as = static_cast<double>(source.alphabet_size);
    if ((k + 1) * std::log2(at) + l * std::log2(as) >= 62.0)
        throw std::invalid_argument("transfer_entropy: embedding key exceeds 64-bit packing");

    const auto at_u = static_cast<std::uint64_t>(target.alphabet_size);
    const auto as_u = static_cast<std::uint64_t>(source.alphabet_size);
    std::uint64_t as_pow_l = 1;
    for (std::size_t i = 0; i < l; ++i) as_pow_l *= as_u;

    auto hist_keys = [&](std::size_t t) {
        std::uint64_t xh = 0, yh = 0;
        for (std::size_t i = 1; i <= k; ++i)
            xh = xh * at_u + static_cast<std::uint64_t>(target.symbols[t - i]);
        for (std::size_t i = 1; i <= l; ++i)
            yh = yh * as_u + static_cast<std::uint64_t>(source.symbols[t - i]);
        return std::pair{xh, yh};
    };

    std::unordered_map<std::uint64_t, std::uint64_t> c_xh, c_xh_yh, c_xt_xh, c_full;
    const std::size_t samples = n - maxh;
    c_xh.reserve(samples);
    c_xh_yh.reserve(samples);
    c_xt_xh.reserve(samples);
    c_full.reserve(samples);

    for (std::size_t t = maxh; t < n; ++t) {
        const auto [xh, yh] = hist_keys(t);
        const auto xt = static_cast<std::uint64_t>(target.symbols[t]);
        ++c_xh[xh];
        ++c_xh_yh[xh * as_pow_l + yh];
        ++c_xt_xh[xh * at_u + xt];
        ++c_full[(xh * as_pow_l + yh) * at_u + xt];
    }

    TEEstimate est;
    est.config = cfg;
    est.first_valid = maxh;
    est.samples_used = samples;
    est.local_bits.assign(n, 0.0);

    double sum = 0.0;
    for (std::size_t t = maxh; t < n; ++t) {
        const auto [xh, yh] = hist_keys(t);
        const auto xt = static_cast<std::uint64_t>(target.symbols[t]);
        const double cf = static_cast<double>(c_full.at((xh * as_pow_l + yh) * at_u + xt));
        const double ch = static_cast<double>(c_xh.at(xh));
        const double chy = static_cast<double>(c_xh_yh.at(xh * as_pow_l + yh));
        const double cth = static_cast<double>(c_xt_xh.at(xh * at_u + xt));
        const double local = log2_ratio(cf * ch, chy * cth);
        est.local_bits[t] = local;
        sum += local;
    }
    est.global_bits = sum / static_cast<double>(samples);
    // Plug-in TE is a conditional MI, nonnegative up to rounding.
    if (est.global_bits < 0.0 && est.global_bits > -1e-9) est.global_bits = 0.0;

    if (cfg.bias_correction == BiasCorrection::miller_madow) {
        // TE = H(Xh,Yh) + H(Xt,Xh) - H(Xh) - H(Xt,Xh,Yh); correct each term.
        const double corr =
            (static_cast<double>(c_xh_yh.size()) + static_cast<double>(c_xt_xh.size()) -
             static_cast<double>(c_xh.size()) - static_cast<double>(c_full.size())) /
            (2.0 * static_cast<double>(samples) * kLn2);
        est.bias_corrected_bits = est.global_bits + corr;
    }
    return est;
}

std::vector<WindowedTE> windowed_transfer_entropy(const SymbolSeries& source,
                                                  const SymbolSeries& target,
                                                  const TEConfig& cfg,
                                                  std::size_t window, std::size_t step) {
    cfg.validate();
    const std::size_t maxh = static_cast<std::size_t>(std::max(cfg.k, cfg.l));
    if (window <= maxh + 1)
        throw std::invalid_argument("windowed_transfer_entropy: window must exceed max(k,l)+1");
    if (step < 1) throw std::invalid_argument("windowed_transfer_entropy: step must be >= 1");
    if (source.size() != target.size())
        throw std::invalid_argument("windowed_transfer_entropy: series lengths differ");

    std::vector<WindowedTE> out;
    const std::size_t n = target.size();
    for (std::size_t start = 0; start + window <= n; start += step) {
        SymbolSeries s{{source.symbols.begin() + static_cast<std::ptrdiff_t>(start),
                        source.symbols.begin() + static_cast<std::ptrdiff_t>(start + window)},
                       source.alphabet_size};
        SymbolSeries x{{target.symbols.begin() + static_cast<std::ptrdiff_t>(start),
                        target.symbols.begin() + static_cast<std::ptrdiff_t>(start + window)},
                       target.alphabet_size};
        const double bits = std::max(transfer_entropy(s, x, cfg).global_bits, 0.0);
        out.push_back({start + window - 1, bits});
    }
    return out;
}

double miller_madow(double h_plugin, std::size_t distinct_outcomes, std::size_t n) {
    if (n < 1) throw std::invalid_argument("miller_madow: n must be >= 1");
    if (distinct_outcomes < 1)
        throw std::invalid_argument("miller_madow: distinct_outcomes must be >= 1");
    return h_plugin + static_cast<double>(distinct_outcomes - 1) /
                          (2.0 * static_cast<double>(n) * kLn2);
}

Discretized discretize(const std::vector<double>& values, const BinningSpec& spec) {
    spec.validate();
    Discretized out;
    out.series.alphabet_size = spec.bins;
    out.series.symbols.reserve(values.size());
    const double width = spec.width();
    for (double v : values) {
        int sym;
        if (v < spec.lo) {
            sym = 0;
            ++out.clamped;
        } else if (v > spec.hi) {
            sym = spec.bins - 1;
            ++out.clamped;
        } else {
            sym = static_cast<int>(std::floor((v - spec.lo) / width));
            if (sym > spec.bins - 1) sym = spec.bins - 1;  // v == hi: last bin closed
        }
        out.series.symbols.push_back(sym);
    }
    return out;
}

}  // namespace effcom::infotheory
