#pragma once

#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

#include "qembed/adam.hpp"
#include "qembed/circuit.hpp"
#include "qembed/complex_ops.hpp"
#include "qembed/embedding_matrix.hpp"
#include "qembed/rng.hpp"

namespace qembed {

struct FitConfig {
    int max_iters = 5000;
    double lr = 0.01;
    double target_infidelity = 1e-6; // early stop once the fit is this good
    bool use_sgd = false;            // plain gradient steps instead of Adam
    uint64_t seed = 1;
    int threads = 1;
};

struct FitResult {
    size_t word_id = 0;
    double final_infidelity = 1.0; // best seen, = 1 - F
    int iterations = 0;
};

// Fits circuit angles so the prepared state matches a normalized target
// vector, minimizing 1 - |<psi(params)|target>|^2. Tracks the best
// parameters seen. Angle init is uniform in [0, 2pi), seeded per word id.
inline FitResult fit_word_pqc(const ComplexVec& target, const AnsatzSpec& ansatz,
                              const FitConfig& cfg, std::vector<double>& best_params,
                              size_t word_id = 0) {
    if (target.dim() != ansatz.dim())
        throw std::invalid_argument("target dimension does not match ansatz");
    const StateVector tgt = vec_to_state(normalize(target), ansatz.n_qubits);

    Rng rng(Rng::derive(cfg.seed, word_id));
    std::vector<double> params(ansatz.param_count());
    for (auto& a : params) a = rng.uniform(0.0, 2.0 * M_PI);

    Adam opt(params.size(), cfg.lr);
    std::vector<double> grad;
    FitResult res;
    res.word_id = word_id;
    best_params = params;
    for (int it = 0; it < cfg.max_iters; ++it) {
        const double fid = fidelity_gradient(ansatz, params, tgt, grad);
        const double infid = 1.0 - fid;
        if (infid < res.final_infidelity) {
            res.final_infidelity = infid;
            best_params = params;
        }
        res.iterations = it + 1;
        if (res.final_infidelity <= cfg.target_infidelity) break;
        // minimizing infidelity: descend along -dF/dtheta
        if (cfg.use_sgd) {
            for (size_t j = 0; j < params.size(); ++j) params[j] += cfg.lr * grad[j];
        } else {
            for (auto& g : grad) g = -g;
            opt.step(params, grad);
        }
    }
    return res;
}

struct VocabularyFit {
    AnsatzSpec ansatz;
    std::vector<std::vector<double>> params; // per word id
    std::vector<FitResult> results;

    double mean_infidelity() const {
        double s = 0.0;
        for (const auto& r : results) s += r.final_infidelity;
        return results.empty() ? 0.0 : s / static_cast<double>(results.size());
    }

    double fraction_below(double threshold) const {
        size_t n = 0;
        for (const auto& r : results)
            if (r.final_infidelity <= threshold) ++n;
        return results.empty() ? 0.0 : static_cast<double>(n) / static_cast<double>(results.size());
    }
};

// Independent per-word fits over a whole embedding table, parallelized by
// a thread pool over word ids. Source rows are normalized on load.
inline VocabularyFit fit_vocabulary(const EmbeddingTable& embeddings,
                                    const AnsatzSpec& ansatz, const FitConfig& cfg) {
    const size_t n = embeddings.rows();
    VocabularyFit out;
    out.ansatz = ansatz;
    out.params.resize(n);
    out.results.resize(n);

    for (size_t w = 0; w < n; ++w)
        if (norm_sq(embeddings.re(w), embeddings.im(w)) <= 0.0)
            throw std::runtime_error("zero-norm embedding row " + std::to_string(w));

    std::atomic<size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const size_t w = next.fetch_add(1);
            if (w >= n) return;
            out.results[w] = fit_word_pqc(embeddings.row(w), ansatz, cfg, out.params[w], w);
        }
    };
    const int nthreads = std::max(1, cfg.threads);
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return out;
}

struct SweepCell {
    std::string ansatz_id;
    int layers = 0;
    double mean_infidelity = 0.0;
    std::vector<std::pair<std::string, double>> correlations; // per dataset
};

} // namespace qembed
