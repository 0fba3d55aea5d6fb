#pragma once

#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

#include "qembed/circuit.hpp"
#include "qembed/corpus.hpp"
#include "qembed/embedding_matrix.hpp"
#include "qembed/fit.hpp"
#include "qembed/losses.hpp"
#include "qembed/trainer.hpp"

namespace qembed {

// One parameter set per vocabulary word, uniform shape.
struct WordCircuitTable {
    AnsatzSpec ansatz;
    std::vector<std::vector<double>> params;

    WordCircuitTable() = default;
    WordCircuitTable(const AnsatzSpec& a, size_t vocab, uint64_t seed) : ansatz(a) {
        params.resize(vocab);
        for (size_t w = 0; w < vocab; ++w) {
            Rng rng(Rng::derive(seed, w));
            params[w].resize(a.param_count());
            for (auto& x : params[w]) x = rng.uniform(0.0, 2.0 * M_PI);
        }
    }

    StateVector prepare(size_t word) const {
        return prepare_state(ansatz, params[word]);
    }
};

struct PqcTrainConfig {
    std::string ansatz_id = "A5";
    int n_layers = 3;
    int negatives = 5;
    int window = 5;
    int epochs = 10;
    double scale_D = 3.5;
    double lr_pqc = 0.01;  // Adam step for circuit angles
    double lr_emb = 0.001; // Adam step for arbitrary context embeddings (1-way)
    double subsample_t = 1e-3;
    int threads = 1;
    uint64_t seed = 1;
    bool dynamic_window = true;
};

namespace detail {

// Scaled-sigmoid loss terms over a prepared focal state and a set of
// normalized context vectors. Returns the loss, the per-term dL/dp
// coefficients and the per-term overlaps z_m = <c_m|psi>.
struct PqcLossTerms {
    double loss = 0.0;
    std::vector<double> coeff; // dL/dp per term
    std::vector<cplx> z;       // <c|psi> per term
};

inline void pqc_term(PqcLossTerms& t, const cplx& z, int sign, double D) {
    const double s = sign >= 0 ? 1.0 : -1.0;
    const double p = std::norm(z);
    const double FD = D * (2.0 * p - 1.0);
    t.loss += softplus(-s * FD);
    t.coeff.push_back(-s * sigmoid(-s * FD) * 2.0 * D);
    t.z.push_back(z);
}

} // namespace detail

// 1-way regime: the focal word is a PQC state, contexts and negatives are
// arbitrary complex vectors normalized inside the loss. Gradients flow
// into the circuit angles (adjoint pass) and the raw context components.
class PqcFocalTrainer {
  public:
    PqcFocalTrainer(const CorpusIds& corpus, const Vocabulary& vocab,
                    const NegativeSamplingTable& table, PqcTrainConfig cfg, size_t dim)
        : corpus_(corpus), vocab_(vocab), table_(table), cfg_(cfg),
          ansatz_(cfg.ansatz_id, qubits_for(dim), cfg.n_layers), dim_(dim) {}

    static int qubits_for(size_t dim) {
        int n = 0;
        while ((size_t(1) << n) < dim) ++n;
        if ((size_t(1) << n) != dim)
            throw std::invalid_argument("embedding dimension is not a power of two");
        return n;
    }

    std::pair<WordCircuitTable, ComplexEmbeddingMatrix> train() {
        WordCircuitTable focal(ansatz_, vocab_.size(), Rng::derive(cfg_.seed, 0xf0c));
        ComplexEmbeddingMatrix ctx_matrix(vocab_.size(), dim_, EmbeddingMode::complex);
        ctx_matrix.randomize(Rng::derive(cfg_.seed, 0xc0));

        detail::AdamTables adam_ctx;
        adam_ctx.init(vocab_.size(), dim_);
        std::vector<std::vector<double>> adam_m(vocab_.size()), adam_v(vocab_.size());
        std::vector<uint32_t> adam_t(vocab_.size(), 0);
        for (size_t w = 0; w < vocab_.size(); ++w) {
            adam_m[w].assign(ansatz_.param_count(), 0.0);
            adam_v[w].assign(ansatz_.param_count(), 0.0);
        }

        run_threads([&](int tid) {
            TrainingExample ex;
            std::vector<double> gx_re(dim_), gx_im(dim_), gf_re(dim_), gf_im(dim_);
            for (int epoch = 0; epoch < cfg_.epochs; ++epoch) {
                PairStream s = make_stream(tid * 131 + epoch);
                while (s.next(ex)) {
                    const size_t f = static_cast<size_t>(ex.focal);
                    const StateVector psi = prepare_state(ansatz_, focal.params[f]);

                    detail::PqcLossTerms terms;
                    StateVector lambda(ansatz_.n_qubits);
                    std::fill(lambda.amplitudes().begin(), lambda.amplitudes().end(),
                              cplx(0, 0));

                    auto add_context = [&](int32_t cid, int sign) {
                        auto cr = ctx_matrix.context.re(static_cast<size_t>(cid));
                        auto ci = ctx_matrix.context.im(static_cast<size_t>(cid));
                        const double B = norm_sq(cr, ci);
                        if (B <= 0.0) throw std::runtime_error("zero-norm context");
                        const double invn = 1.0 / std::sqrt(B);
                        // z = <c_norm | psi>
                        cplx z(0, 0);
                        for (size_t j = 0; j < dim_; ++j)
                            z += std::conj(cplx(cr[j] * invn, ci[j] * invn)) *
                                 psi[j];
                        detail::pqc_term(terms, z, sign, cfg_.scale_D);
                        // lambda += coeff * z * c_norm (for the angle gradient)
                        const double coeff = terms.coeff.back();
                        for (size_t j = 0; j < dim_; ++j)
                            lambda[j] += coeff * z * cplx(cr[j] * invn, ci[j] * invn);

                        // context gradient: p = |<c|psi>|^2 / |c|^2, raw c
                        std::fill(gx_re.begin(), gx_re.end(), 0.0);
                        std::fill(gx_im.begin(), gx_im.end(), 0.0);
                        std::fill(gf_re.begin(), gf_re.end(), 0.0);
                        std::fill(gf_im.begin(), gf_im.end(), 0.0);
                        std::vector<double> pr(dim_), pi(dim_);
                        for (size_t j = 0; j < dim_; ++j) {
                            pr[j] = psi[j].real();
                            pi[j] = psi[j].imag();
                        }
                        const auto o = qembed::detail::raw_overlap(cr, ci, pr, pi);
                        qembed::detail::add_p_grad(o, coeff, cr, ci, pr, pi, gx_re,
                                                   gx_im, gf_re, gf_im);
                        detail::adam_row_update(ctx_matrix.context, adam_ctx,
                                                static_cast<size_t>(cid), gx_re, gx_im,
                                                cfg_.lr_emb, true);
                    };

                    add_context(ex.context, +1);
                    for (int32_t ng : ex.negatives)
                        if (ng >= 0) add_context(ng, -1);

                    auto grad = adjoint_gradient(ansatz_, focal.params[f], lambda, &psi);
                    adam_params_update(focal.params[f], adam_m[f], adam_v[f], adam_t[f],
                                       grad, cfg_.lr_pqc);
                }
            }
        });
        return {std::move(focal), std::move(ctx_matrix)};
    }

  private:
    friend class PqcBothTrainer;

    static void adam_params_update(std::vector<double>& params, std::vector<double>& m,
                                   std::vector<double>& v, uint32_t& t,
                                   const std::vector<double>& grad, double lr) {
        constexpr double b1 = 0.9, b2 = 0.999, eps = 1e-8;
        ++t;
        const double c1 = 1.0 - std::pow(b1, t);
        const double c2 = 1.0 - std::pow(b2, t);
        for (size_t j = 0; j < params.size(); ++j) {
            m[j] = b1 * m[j] + (1.0 - b1) * grad[j];
            v[j] = b2 * v[j] + (1.0 - b2) * grad[j] * grad[j];
            params[j] -= lr * (m[j] / c1) / (std::sqrt(v[j] / c2) + eps);
        }
    }

    PairStream make_stream(int salt) const {
        PairStream::Options opt;
        opt.window = cfg_.window;
        opt.subsample_t = cfg_.subsample_t;
        opt.negatives = cfg_.negatives;
        opt.dynamic_window = cfg_.dynamic_window;
        return PairStream(corpus_, vocab_, table_, opt,
                          Rng::derive(cfg_.seed, 0x517 + uint64_t(salt)));
    }

    template <typename F>
    void run_threads(F&& body) {
        const int nthreads = std::max(1, cfg_.threads);
        if (nthreads == 1) {
            body(0);
            return;
        }
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(body, t);
        for (auto& th : pool) th.join();
    }

    const CorpusIds& corpus_;
    const Vocabulary& vocab_;
    const NegativeSamplingTable& table_;
    PqcTrainConfig cfg_;
    AnsatzSpec ansatz_;
    size_t dim_ = 0;
};

// 2-way regime: focal and context words are both PQC states (shared
// ansatz, separate parameter tables). States are normalized by
// construction; the scaled overlap feeds the sigmoid directly.
class PqcBothTrainer {
  public:
    PqcBothTrainer(const CorpusIds& corpus, const Vocabulary& vocab,
                   const NegativeSamplingTable& table, PqcTrainConfig cfg, size_t dim)
        : corpus_(corpus), vocab_(vocab), table_(table), cfg_(cfg),
          ansatz_(cfg.ansatz_id, PqcFocalTrainer::qubits_for(dim), cfg.n_layers) {}

    std::pair<WordCircuitTable, WordCircuitTable> train() {
        WordCircuitTable focal(ansatz_, vocab_.size(), Rng::derive(cfg_.seed, 0xf0c));
        WordCircuitTable context(ansatz_, vocab_.size(), Rng::derive(cfg_.seed, 0xc0));
        const size_t np = ansatz_.param_count();
        std::vector<std::vector<double>> mf(vocab_.size()), vf(vocab_.size()),
            mc(vocab_.size()), vc(vocab_.size());
        std::vector<uint32_t> tf(vocab_.size(), 0), tc(vocab_.size(), 0);
        for (size_t w = 0; w < vocab_.size(); ++w) {
            mf[w].assign(np, 0.0);
            vf[w].assign(np, 0.0);
            mc[w].assign(np, 0.0);
            vc[w].assign(np, 0.0);
        }

        const int nthreads = std::max(1, cfg_.threads);
        auto body = [&](int tid) {
            TrainingExample ex;
            for (int epoch = 0; epoch < cfg_.epochs; ++epoch) {
                PairStream::Options opt;
                opt.window = cfg_.window;
                opt.subsample_t = cfg_.subsample_t;
                opt.negatives = cfg_.negatives;
                opt.dynamic_window = cfg_.dynamic_window;
                PairStream s(corpus_, vocab_, table_, opt,
                             Rng::derive(cfg_.seed, 0xb07 + uint64_t(tid) * 131 + uint64_t(epoch)));
                while (s.next(ex)) {
                    const size_t f = static_cast<size_t>(ex.focal);
                    const StateVector psi_f = prepare_state(ansatz_, focal.params[f]);
                    StateVector lambda_f(ansatz_.n_qubits);
                    std::fill(lambda_f.amplitudes().begin(), lambda_f.amplitudes().end(),
                              cplx(0, 0));

                    auto do_term = [&](int32_t cid, int sign) {
                        const size_t c = static_cast<size_t>(cid);
                        const StateVector psi_c = prepare_state(ansatz_, context.params[c]);
                        const cplx z = state_inner(psi_c, psi_f); // <c|f>
                        const double s_sign = sign >= 0 ? 1.0 : -1.0;
                        const double p = std::norm(z);
                        const double FD = cfg_.scale_D * (2.0 * p - 1.0);
                        const double coeff = -s_sign * sigmoid(-s_sign * FD) * 2.0 * cfg_.scale_D;
                        // focal side: lambda_f += coeff * z * psi_c
                        for (size_t j = 0; j < psi_f.size(); ++j)
                            lambda_f[j] += coeff * z * psi_c[j];
                        // context side: its own adjoint pass with <f|c> orientation
                        StateVector lambda_c = psi_f;
                        const cplx zc = std::conj(z); // <f|c>
                        for (size_t j = 0; j < lambda_c.size(); ++j) lambda_c[j] *= coeff * zc;
                        auto gc = adjoint_gradient(ansatz_, context.params[c], lambda_c, &psi_c);
                        PqcFocalTrainer::adam_params_update(context.params[c], mc[c], vc[c],
                                                            tc[c], gc, cfg_.lr_pqc);
                    };

                    do_term(ex.context, +1);
                    for (int32_t ng : ex.negatives)
                        if (ng >= 0) do_term(ng, -1);

                    auto gf = adjoint_gradient(ansatz_, focal.params[f], lambda_f, &psi_f);
                    PqcFocalTrainer::adam_params_update(focal.params[f], mf[f], vf[f], tf[f],
                                                        gf, cfg_.lr_pqc);
                }
            }
        };
        if (nthreads == 1) {
            body(0);
        } else {
            std::vector<std::thread> pool;
            for (int t = 0; t < nthreads; ++t) pool.emplace_back(body, t);
            for (auto& th : pool) th.join();
        }
        return {std::move(focal), std::move(context)};
    }

  private:
    const CorpusIds& corpus_;
    const Vocabulary& vocab_;
    const NegativeSamplingTable& table_;
    PqcTrainConfig cfg_;
    AnsatzSpec ansatz_;
};

} // namespace qembed
