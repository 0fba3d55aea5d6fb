#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "qembed/circuit.hpp"
#include "qembed/complex_ops.hpp"
#include "qembed/io.hpp"

namespace qembed {

struct SimilarityDataset {
    std::string name;
    struct Pair {
        std::string a, b;
        double score;
    };
    std::vector<Pair> pairs;
};

struct EvalReport {
    std::string model;
    std::string dataset;
    double spearman = 0.0;
    size_t covered_pairs = 0;
    size_t total_pairs = 0;

    double coverage() const {
        return total_pairs ? static_cast<double>(covered_pairs) /
                                 static_cast<double>(total_pairs)
                           : 0.0;
    }
};

// Average ranks with ties assigned the mean of their rank range.
inline std::vector<double> average_ranks(const std::vector<double>& xs) {
    const size_t n = xs.size();
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), size_t(0));
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return xs[a] < xs[b]; });
    std::vector<double> ranks(n);
    size_t i = 0;
    while (i < n) {
        size_t j = i;
        while (j + 1 < n && xs[order[j + 1]] == xs[order[i]]) ++j;
        const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (size_t k = i; k <= j; ++k) ranks[order[k]] = r;
        i = j + 1;
    }
    return ranks;
}

inline double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
    const size_t n = xs.size();
    double mx = 0, my = 0;
    for (size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0, sxx = 0, syy = 0;
    for (size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - mx, dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx <= 0.0 || syy <= 0.0)
        throw std::invalid_argument("undefined correlation: constant input");
    return sxy / std::sqrt(sxx * syy);
}

// Pearson correlation of average-assigned ranks.
inline double spearman(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("length mismatch");
    if (xs.size() < 2) throw std::invalid_argument("need at least 2 points");
    return pearson(average_ranks(xs), average_ranks(ys));
}

enum class DatasetFormat { simple, scws };

// Tolerant "word1 word2 score" parser: comma, tab or space delimited;
// header rows skipped; words lowercased. SCWS rows carry POS tags,
// context sentences and multiple ratings; only the word pair and the
// mean-rating column are used.
inline SimilarityDataset parse_dataset(const std::string& path,
                                       DatasetFormat format = DatasetFormat::simple,
                                       std::string name = "") {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open dataset: " + path);
    SimilarityDataset ds;
    if (name.empty()) {
        const auto slash = path.find_last_of('/');
        ds.name = slash == std::string::npos ? path : path.substr(slash + 1);
    } else {
        ds.name = name;
    }

    auto lower = [](std::string s) {
        for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        return s;
    };
    std::unordered_set<std::string> seen;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        {
            std::string cur;
            for (char c : line) {
                if (c == ',' || c == '\t' || c == ' ') {
                    if (!cur.empty()) fields.push_back(std::move(cur));
                    cur.clear();
                } else {
                    cur.push_back(c);
                }
            }
            if (!cur.empty()) fields.push_back(std::move(cur));
        }
        if (fields.empty()) continue;

        std::string wa, wb, score_str;
        if (format == DatasetFormat::scws) {
            // <id> <word1> <pos> <word2> <pos> <context...> <avg> <ratings x10>
            if (fields.size() < 16) {
                if (lineno == 1) continue; // header
                throw std::runtime_error("unparseable SCWS row at line " +
                                         std::to_string(lineno));
            }
            wa = fields[1];
            wb = fields[3];
            score_str = fields[fields.size() - 11];
        } else {
            if (fields.size() < 3) {
                if (lineno == 1) continue;
                throw std::runtime_error("unparseable dataset row at line " +
                                         std::to_string(lineno));
            }
            wa = fields[0];
            wb = fields[1];
            score_str = fields[2];
        }
        double score;
        try {
            size_t used = 0;
            score = std::stod(score_str, &used);
            if (used != score_str.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            if (lineno == 1) continue; // header row
            throw std::runtime_error("unparseable score at line " + std::to_string(lineno));
        }
        wa = lower(wa);
        wb = lower(wb);
        const std::string key = wa + "\x01" + wb;
        if (!seen.insert(key).second)
            throw std::runtime_error("duplicate pair at line " + std::to_string(lineno));
        ds.pairs.push_back({std::move(wa), std::move(wb), score});
    }
    return ds;
}

// A scorable model: real embeddings (cosine), complex embeddings
// (fidelity of normalized focal vectors) or per-word PQC states.
class ScoringModel {
  public:
    static ScoringModel from_embeddings(EmbeddingModel m) {
        ScoringModel s;
        s.mode_ = m.mode;
        for (size_t i = 0; i < m.words.size(); ++i) s.ids_.emplace(m.words[i], i);
        s.table_ = std::move(m.table);
        return s;
    }

    static ScoringModel from_pqc(const PqcParamFile& f, const AnsatzSpec& ansatz) {
        ScoringModel s;
        s.mode_ = EmbeddingMode::complex;
        s.table_ = EmbeddingTable(f.words.size(), ansatz.dim());
        for (size_t i = 0; i < f.words.size(); ++i) {
            s.ids_.emplace(f.words[i], i);
            const StateVector st = prepare_state(ansatz, f.angles[i]);
            s.table_.set_row(i, state_to_vec(st));
        }
        return s;
    }

    bool contains(const std::string& w) const { return ids_.count(w) > 0; }

    // cosine for real mode, fidelity of normalized vectors otherwise
    double score_pair(const std::string& a, const std::string& b) const {
        const auto ia = ids_.find(a), ib = ids_.find(b);
        if (ia == ids_.end() || ib == ids_.end())
            throw std::invalid_argument("out-of-vocabulary word");
        const size_t ra = ia->second, rb = ib->second;
        if (mode_ == EmbeddingMode::real) {
            auto xr = table_.re(ra);
            auto yr = table_.re(rb);
            double dot = 0, nx = 0, ny = 0;
            for (size_t j = 0; j < xr.size(); ++j) {
                dot += xr[j] * yr[j];
                nx += xr[j] * xr[j];
                ny += yr[j] * yr[j];
            }
            if (nx <= 0.0 || ny <= 0.0)
                throw std::runtime_error("zero-norm embedding");
            return dot / std::sqrt(nx * ny);
        }
        return fidelity(table_.row(ra), table_.row(rb), /*auto_normalize=*/true);
    }

    EmbeddingMode mode() const { return mode_; }

  private:
    EmbeddingMode mode_ = EmbeddingMode::complex;
    EmbeddingTable table_;
    std::unordered_map<std::string, size_t> ids_;
};

// Scores all pairs with both words in vocabulary; missing pairs are
// skipped and never enter the correlation.
inline EvalReport evaluate(const ScoringModel& model, const SimilarityDataset& ds,
                           std::vector<double>* system_scores_out = nullptr) {
    EvalReport r;
    r.dataset = ds.name;
    r.total_pairs = ds.pairs.size();
    std::vector<double> sys, human;
    for (const auto& p : ds.pairs) {
        if (!model.contains(p.a) || !model.contains(p.b)) continue;
        sys.push_back(model.score_pair(p.a, p.b));
        human.push_back(p.score);
    }
    r.covered_pairs = sys.size();
    if (r.covered_pairs < 2)
        throw std::runtime_error("fewer than 2 covered pairs in " + ds.name);
    r.spearman = spearman(sys, human);
    if (system_scores_out) *system_scores_out = std::move(sys);
    return r;
}

} // namespace qembed
