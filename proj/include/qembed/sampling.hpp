#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qembed/rng.hpp"
#include "qembed/vocab.hpp"

namespace qembed {

// word2vec-style unigram table: word w occupies a contiguous block of
// slots proportional to count(w)^0.75.
class NegativeSamplingTable {
  public:
    static constexpr double kPower = 0.75;

    NegativeSamplingTable(const Vocabulary& vocab, size_t table_size) {
        const size_t n = vocab.size();
        if (n == 0) throw std::invalid_argument("negative table: empty vocabulary");
        if (table_size < n)
            throw std::invalid_argument("negative table: table_size < vocabulary size");
        double total = 0.0;
        for (size_t i = 0; i < n; ++i)
            total += std::pow(static_cast<double>(vocab.count(i)), kPower);
        table_.resize(table_size);
        size_t w = 0;
        double cum = std::pow(static_cast<double>(vocab.count(0)), kPower) / total;
        for (size_t slot = 0; slot < table_size; ++slot) {
            table_[slot] = static_cast<int32_t>(w);
            if (static_cast<double>(slot + 1) / static_cast<double>(table_size) >= cum &&
                w + 1 < n) {
                ++w;
                cum += std::pow(static_cast<double>(vocab.count(w)), kPower) / total;
            }
        }
    }

    size_t size() const { return table_.size(); }
    int32_t slot(size_t i) const { return table_[i]; }

    int32_t sample(Rng& rng) const { return table_[rng.below(table_.size())]; }

  private:
    std::vector<int32_t> table_;
};

// word2vec discard rule: keep(f) = min(1, sqrt(t/f) + t/f). Monotonically
// non-increasing in the word frequency f.
inline double subsample_keep_probability(double word_freq, double t) {
    if (!(word_freq > 0.0) || word_freq > 1.0)
        throw std::invalid_argument("subsample: frequency must be in (0, 1]");
    if (!(t > 0.0)) throw std::invalid_argument("subsample: t must be > 0");
    const double r = t / word_freq;
    const double keep = std::sqrt(r) + r;
    return keep < 1.0 ? keep : 1.0;
}

} // namespace qembed
