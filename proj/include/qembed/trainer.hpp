#pragma once

#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

#include "qembed/corpus.hpp"
#include "qembed/embedding_matrix.hpp"
#include "qembed/losses.hpp"
#include "qembed/sampling.hpp"
#include "qembed/vocab.hpp"

namespace qembed {

enum class Optimizer { sgd_linear_decay, adam };

struct TrainingConfig {
    size_t dim = 64;
    int negatives = 5;
    int window = 5;
    int epochs = 5;
    LossVariant loss = LossVariant::complex_sigmoid_normalized;
    double scale_D = 3.5;
    double lr = 0.025;
    double subsample_t = 1e-3;
    int threads = 1;
    uint64_t seed = 1;
    bool dynamic_window = true;
    NegativePolicy neg_policy = NegativePolicy::redraw;
    Optimizer optimizer = Optimizer::sgd_linear_decay;

    void validate() const {
        if (dim < 1 || negatives < 1 || window < 1 || epochs < 1)
            throw std::invalid_argument("invalid training config");
        if (!(scale_D > 0.0) || !(lr > 0.0))
            throw std::invalid_argument("invalid training config");
    }
};

struct TrainStats {
    uint64_t examples = 0;
    double mean_loss = 0.0; // running average over the whole run
};

namespace detail {

// Per-row Adam state shared across threads (hogwild semantics, like the
// weights themselves).
struct AdamTables {
    std::vector<double> m_re, v_re, m_im, v_im;
    std::vector<uint32_t> steps; // per row
    void init(size_t rows, size_t dim) {
        m_re.assign(rows * dim, 0.0);
        v_re.assign(rows * dim, 0.0);
        m_im.assign(rows * dim, 0.0);
        v_im.assign(rows * dim, 0.0);
        steps.assign(rows, 0);
    }
};

inline void adam_row_update(EmbeddingTable& table, AdamTables& st, size_t row,
                            std::span<const double> gre, std::span<const double> gim,
                            double lr, bool complex_mode) {
    constexpr double b1 = 0.9, b2 = 0.999, eps = 1e-8;
    const uint32_t t = ++st.steps[row];
    const double c1 = 1.0 - std::pow(b1, t);
    const double c2 = 1.0 - std::pow(b2, t);
    const size_t d = table.dim();
    const size_t off = row * d;
    auto re = table.re(row);
    auto im = table.im(row);
    for (size_t j = 0; j < d; ++j) {
        double& mr = st.m_re[off + j];
        double& vr = st.v_re[off + j];
        mr = b1 * mr + (1.0 - b1) * gre[j];
        vr = b2 * vr + (1.0 - b2) * gre[j] * gre[j];
        re[j] -= lr * (mr / c1) / (std::sqrt(vr / c2) + eps);
        if (complex_mode) {
            double& mi = st.m_im[off + j];
            double& vi = st.v_im[off + j];
            mi = b1 * mi + (1.0 - b1) * gim[j];
            vi = b2 * vi + (1.0 - b2) * gim[j] * gim[j];
            im[j] -= lr * (mi / c1) / (std::sqrt(vi / c2) + eps);
        }
    }
}

} // namespace detail

// Multi-threaded Skip-gram-with-negative-sampling trainer. Threads share
// the weight tables and update them without locks (hogwild); each thread
// owns its sentence range, stream cursor and rng. Deterministic at
// threads = 1 for a fixed seed.
class SgnsTrainer {
  public:
    SgnsTrainer(const CorpusIds& corpus, const Vocabulary& vocab,
                const NegativeSamplingTable& table, TrainingConfig cfg)
        : corpus_(corpus), vocab_(vocab), table_(table), cfg_(cfg) {
        cfg_.validate();
        if (vocab.size() == 0) throw std::invalid_argument("empty vocabulary");
    }

    // Optional observer: called with (examples_so_far, running_mean_loss)
    // from thread 0 every report_every examples.
    using Progress = void (*)(uint64_t, double);

    ComplexEmbeddingMatrix train(TrainStats* stats = nullptr, Progress progress = nullptr,
                                 uint64_t report_every = 100000) {
        const bool cplx = loss_is_complex(cfg_.loss);
        ComplexEmbeddingMatrix matrix(vocab_.size(), cfg_.dim,
                                      cplx ? EmbeddingMode::complex : EmbeddingMode::real);
        matrix.randomize(cfg_.seed);

        detail::AdamTables adam_f, adam_c;
        if (cfg_.optimizer == Optimizer::adam) {
            adam_f.init(vocab_.size(), cfg_.dim);
            adam_c.init(vocab_.size(), cfg_.dim);
        }

        // planned example count drives the linear lr decay (estimate:
        // tokens * window per epoch, the same scale word2vec uses)
        const double planned = static_cast<double>(corpus_.ids.size()) *
                               static_cast<double>(cfg_.epochs);
        std::atomic<uint64_t> tokens_done{0};
        std::atomic<uint64_t> examples{0};
        std::atomic<double> loss_sum{0.0};

        const int nthreads = std::max(1, cfg_.threads);
        const size_t nsent = corpus_.sentence_count();
        auto worker = [&](int tid) {
            const size_t lo = nsent * static_cast<size_t>(tid) / static_cast<size_t>(nthreads);
            const size_t hi = nsent * static_cast<size_t>(tid + 1) / static_cast<size_t>(nthreads);
            PairStream::Options opt;
            opt.window = cfg_.window;
            opt.subsample_t = cfg_.subsample_t;
            opt.negatives = cfg_.negatives;
            opt.dynamic_window = cfg_.dynamic_window;
            opt.policy = cfg_.neg_policy;
            std::vector<double> gf_re(cfg_.dim), gf_im(cfg_.dim);
            std::vector<double> gx_re(cfg_.dim), gx_im(cfg_.dim);
            double local_loss = 0.0;
            uint64_t local_examples = 0, local_tokens = 0;
            for (int epoch = 0; epoch < cfg_.epochs; ++epoch) {
                PairStream stream(corpus_, vocab_, table_, opt,
                                  Rng::derive(cfg_.seed, uint64_t(tid) * 1000003 + uint64_t(epoch)),
                                  lo, hi);
                TrainingExample ex;
                int32_t last_focal = -1;
                while (stream.next(ex)) {
                    if (ex.focal != last_focal) {
                        // lr decay and progress are tracked per focal token
                        last_focal = ex.focal;
                        if ((++local_tokens & 0x3ff) == 0)
                            tokens_done.fetch_add(1024, std::memory_order_relaxed);
                    }
                    const double progress_frac =
                        static_cast<double>(tokens_done.load(std::memory_order_relaxed)) /
                        (planned > 0 ? planned : 1.0);
                    const double alpha =
                        cfg_.optimizer == Optimizer::sgd_linear_decay
                            ? std::max(cfg_.lr * 1e-4, cfg_.lr * (1.0 - progress_frac))
                            : cfg_.lr;
                    local_loss += train_example(matrix, adam_f, adam_c, ex, alpha,
                                                gf_re, gf_im, gx_re, gx_im);
                    ++local_examples;
                    if (progress && tid == 0 && local_examples % report_every == 0)
                        progress(local_examples, local_loss / static_cast<double>(local_examples));
                }
            }
            examples.fetch_add(local_examples);
            // atomic double accumulate
            double cur = loss_sum.load();
            while (!loss_sum.compare_exchange_weak(cur, cur + local_loss)) {}
        };

        if (nthreads == 1) {
            worker(0);
        } else {
            std::vector<std::thread> pool;
            for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker, t);
            for (auto& th : pool) th.join();
        }
        if (stats) {
            stats->examples = examples.load();
            stats->mean_loss =
                stats->examples ? loss_sum.load() / static_cast<double>(stats->examples) : 0.0;
        }
        return matrix;
    }

  private:
    double train_example(ComplexEmbeddingMatrix& matrix, detail::AdamTables& adam_f,
                         detail::AdamTables& adam_c, const TrainingExample& ex,
                         double alpha, std::vector<double>& gf_re,
                         std::vector<double>& gf_im, std::vector<double>& gx_re,
                         std::vector<double>& gx_im) {
        const bool cplx = loss_is_complex(cfg_.loss);
        auto fr = matrix.focal.re(static_cast<size_t>(ex.focal));
        auto fi = matrix.focal.im(static_cast<size_t>(ex.focal));
        std::fill(gf_re.begin(), gf_re.end(), 0.0);
        std::fill(gf_im.begin(), gf_im.end(), 0.0);
        double loss = 0.0;

        auto do_term = [&](int32_t ctx_id, int sign) {
            auto xr = matrix.context.re(static_cast<size_t>(ctx_id));
            auto xi = matrix.context.im(static_cast<size_t>(ctx_id));
            std::fill(gx_re.begin(), gx_re.end(), 0.0);
            std::fill(gx_im.begin(), gx_im.end(), 0.0);
            loss += sgns_term_grad(cfg_.loss, sign, fr, fi, xr, xi, cfg_.scale_D,
                                   gf_re, gf_im, gx_re, gx_im);
            if (cfg_.optimizer == Optimizer::adam) {
                detail::adam_row_update(matrix.context, adam_c,
                                        static_cast<size_t>(ctx_id), gx_re, gx_im,
                                        cfg_.lr, cplx);
            } else {
                for (size_t j = 0; j < cfg_.dim; ++j) {
                    xr[j] -= alpha * gx_re[j];
                    if (cplx) xi[j] -= alpha * gx_im[j];
                }
            }
        };

        do_term(ex.context, +1);
        for (int32_t n : ex.negatives)
            if (n >= 0) do_term(n, -1);

        if (cfg_.optimizer == Optimizer::adam) {
            detail::adam_row_update(matrix.focal, adam_f, static_cast<size_t>(ex.focal),
                                    gf_re, gf_im, cfg_.lr, cplx);
        } else {
            for (size_t j = 0; j < cfg_.dim; ++j) {
                fr[j] -= alpha * gf_re[j];
                if (cplx) fi[j] -= alpha * gf_im[j];
            }
        }
        return loss;
    }

    const CorpusIds& corpus_;
    const Vocabulary& vocab_;
    const NegativeSamplingTable& table_;
    TrainingConfig cfg_;
};

} // namespace qembed
