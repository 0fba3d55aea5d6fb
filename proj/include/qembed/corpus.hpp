#pragma once

#include <cctype>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qembed/rng.hpp"
#include "qembed/sampling.hpp"
#include "qembed/vocab.hpp"

namespace qembed {

// Reads whitespace-delimited tokens, one sentence per line.
inline std::vector<std::string> read_tokens(const std::string& path, bool lowercase = true) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open corpus: " + path);
    std::vector<std::string> tokens;
    std::string tok;
    while (in >> tok) {
        if (lowercase)
            for (char& c : tok)
                c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        tokens.push_back(std::move(tok));
        tok.clear();
    }
    return tokens;
}

// Corpus mapped to vocabulary ids, sentence boundaries preserved.
// Out-of-vocabulary tokens are dropped.
struct CorpusIds {
    std::vector<int32_t> ids;       // flat token ids
    std::vector<size_t> sentences;  // offsets; sentence s = [sentences[s], sentences[s+1])

    size_t sentence_count() const { return sentences.empty() ? 0 : sentences.size() - 1; }

    static CorpusIds load(const std::string& path, const Vocabulary& vocab,
                          bool lowercase = true) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw std::runtime_error("cannot open corpus: " + path);
        CorpusIds c;
        c.sentences.push_back(0);
        std::string line, tok;
        while (std::getline(in, line)) {
            std::istringstream ls(line);
            bool nonempty = false;
            while (ls >> tok) {
                if (lowercase)
                    for (char& ch : tok)
                        ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
                const int64_t id = vocab.id(tok);
                if (id >= 0) {
                    c.ids.push_back(static_cast<int32_t>(id));
                    nonempty = true;
                }
            }
            if (nonempty) c.sentences.push_back(c.ids.size());
        }
        return c;
    }
};

enum class NegativePolicy {
    redraw, // redraw a negative that collides with the true context (unbiased k)
    skip    // mark the colliding draw; callers drop that term (word2vec.c behavior)
};

struct TrainingExample {
    int32_t focal = -1;
    int32_t context = -1;
    std::vector<int32_t> negatives; // -1 entries mark skipped collisions
};

// Generates subsampled (focal, context) pairs with negatives over a slice
// of the corpus. Each trainer thread owns one stream with its own rng.
class PairStream {
  public:
    struct Options {
        int window = 5;
        double subsample_t = 1e-3; // <= 0 disables subsampling
        int negatives = 5;
        bool dynamic_window = true;
        NegativePolicy policy = NegativePolicy::redraw;
    };

    PairStream(const CorpusIds& corpus, const Vocabulary& vocab,
               const NegativeSamplingTable& table, Options opt, uint64_t seed,
               size_t sentence_begin = 0, size_t sentence_end = SIZE_MAX)
        : corpus_(corpus), vocab_(vocab), table_(table), opt_(opt), rng_(seed),
          sent_begin_(sentence_begin),
          sent_end_(std::min(sentence_end, corpus.sentence_count())) {
        if (opt_.window < 1) throw std::invalid_argument("window must be >= 1");
        if (opt_.negatives < 1) throw std::invalid_argument("negatives must be >= 1");
        rewind();
    }

    void rewind() {
        sent_ = sent_begin_;
        kept_.clear();
        pos_ = 0;
        ctx_ = 0;
        ctx_end_ = 0;
    }

    // Returns false at end of epoch.
    bool next(TrainingExample& out) {
        while (true) {
            if (ctx_ < ctx_end_) {
                const size_t j = ctx_++;
                if (j == pos_) continue;
                out.focal = kept_[pos_];
                out.context = kept_[j];
                draw_negatives(out);
                return true;
            }
            if (pos_ + 1 < kept_.size()) {
                ++pos_;
                open_window();
                continue;
            }
            if (!advance_sentence()) return false;
        }
    }

    Rng& rng() { return rng_; }

  private:
    bool advance_sentence() {
        while (sent_ < sent_end_) {
            const size_t b = corpus_.sentences[sent_];
            const size_t e = corpus_.sentences[sent_ + 1];
            ++sent_;
            kept_.clear();
            for (size_t i = b; i < e; ++i) {
                const int32_t id = corpus_.ids[i];
                if (opt_.subsample_t > 0.0) {
                    const double keep = subsample_keep_probability(
                        vocab_.frequency(static_cast<size_t>(id)), opt_.subsample_t);
                    if (rng_.uniform() >= keep) continue;
                }
                kept_.push_back(id);
            }
            if (kept_.size() < 2) continue;
            pos_ = 0;
            open_window();
            return true;
        }
        return false;
    }

    void open_window() {
        const int w = opt_.dynamic_window
                          ? 1 + static_cast<int>(rng_.below(static_cast<uint64_t>(opt_.window)))
                          : opt_.window;
        const size_t lo = pos_ >= static_cast<size_t>(w) ? pos_ - static_cast<size_t>(w) : 0;
        const size_t hi = std::min(kept_.size(), pos_ + static_cast<size_t>(w) + 1);
        ctx_ = lo;
        ctx_end_ = hi;
    }

    void draw_negatives(TrainingExample& out) {
        out.negatives.resize(static_cast<size_t>(opt_.negatives));
        for (auto& n : out.negatives) {
            int32_t cand = table_.sample(rng_);
            if (opt_.policy == NegativePolicy::redraw) {
                if (vocab_.size() < 2 && cand == out.context)
                    throw std::runtime_error("degenerate vocabulary");
                int guard = 0;
                while (cand == out.context) {
                    cand = table_.sample(rng_);
                    if (++guard > 1000)
                        throw std::runtime_error("degenerate vocabulary");
                }
            } else if (cand == out.context) {
                cand = -1;
            }
            n = cand;
        }
    }

    const CorpusIds& corpus_;
    const Vocabulary& vocab_;
    const NegativeSamplingTable& table_;
    Options opt_;
    Rng rng_;
    size_t sent_begin_, sent_end_;
    size_t sent_ = 0;
    std::vector<int32_t> kept_;
    size_t pos_ = 0, ctx_ = 0, ctx_end_ = 0;
};

} // namespace qembed
