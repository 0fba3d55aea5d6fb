#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace qembed {

// Frequency-filtered vocabulary. Ids are dense in [0, |V|), assigned by
// descending count with ties broken by first occurrence in the stream.
class Vocabulary {
  public:
    Vocabulary() = default;

    template <typename TokenRange>
    static Vocabulary build(const TokenRange& tokens, int64_t min_count) {
        if (min_count < 1) throw std::invalid_argument("min_count must be >= 1");
        std::unordered_map<std::string, size_t> index;
        std::vector<std::string> words;
        std::vector<int64_t> counts;
        std::vector<size_t> first_seen;
        size_t pos = 0;
        bool any = false;
        for (const auto& tok : tokens) {
            any = true;
            auto it = index.find(tok);
            if (it == index.end()) {
                index.emplace(tok, words.size());
                words.push_back(tok);
                counts.push_back(1);
                first_seen.push_back(pos);
            } else {
                ++counts[it->second];
            }
            ++pos;
        }
        if (!any) throw std::runtime_error("empty corpus");

        std::vector<size_t> order(words.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
            if (counts[a] != counts[b]) return counts[a] > counts[b];
            return first_seen[a] < first_seen[b];
        });

        Vocabulary v;
        v.min_count_ = min_count;
        for (size_t i : order) {
            if (counts[i] < min_count) continue;
            v.id_of_.emplace(words[i], v.words_.size());
            v.words_.push_back(words[i]);
            v.counts_.push_back(counts[i]);
            v.total_tokens_ += counts[i];
        }
        return v;
    }

    size_t size() const { return words_.size(); }
    int64_t total_tokens() const { return total_tokens_; }
    int64_t min_count() const { return min_count_; }
    const std::string& word(size_t id) const { return words_.at(id); }
    int64_t count(size_t id) const { return counts_.at(id); }
    const std::vector<int64_t>& counts() const { return counts_; }
    const std::vector<std::string>& words() const { return words_; }

    // -1 when out of vocabulary
    int64_t id(const std::string& w) const {
        auto it = id_of_.find(w);
        return it == id_of_.end() ? -1 : static_cast<int64_t>(it->second);
    }

    double frequency(size_t id) const {
        return static_cast<double>(counts_.at(id)) / static_cast<double>(total_tokens_);
    }

    void save(const std::string& path) const {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open for writing: " + path);
        for (size_t i = 0; i < words_.size(); ++i)
            out << words_[i] << '\t' << counts_[i] << '\n';
    }

    static Vocabulary load(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw std::runtime_error("cannot open vocabulary file: " + path);
        Vocabulary v;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            const auto tab = line.find('\t');
            if (tab == std::string::npos)
                throw std::runtime_error("malformed vocabulary line: " + line);
            std::string w = line.substr(0, tab);
            int64_t c = std::stoll(line.substr(tab + 1));
            v.id_of_.emplace(w, v.words_.size());
            v.words_.push_back(std::move(w));
            v.counts_.push_back(c);
            v.total_tokens_ += c;
        }
        if (v.words_.empty()) throw std::runtime_error("empty vocabulary file: " + path);
        return v;
    }

    // Direct construction from (word, count) pairs, used by tests and by
    // binary model files which carry their own word list.
    static Vocabulary from_counts(const std::vector<std::pair<std::string, int64_t>>& wc) {
        Vocabulary v;
        for (const auto& [w, c] : wc) {
            v.id_of_.emplace(w, v.words_.size());
            v.words_.push_back(w);
            v.counts_.push_back(c);
            v.total_tokens_ += c;
        }
        return v;
    }

  private:
    std::vector<std::string> words_;
    std::vector<int64_t> counts_;
    std::unordered_map<std::string, size_t> id_of_;
    int64_t total_tokens_ = 0;
    int64_t min_count_ = 1;
};

} // namespace qembed
