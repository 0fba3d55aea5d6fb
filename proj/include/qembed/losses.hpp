#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qembed {

enum class LossVariant {
    real_sigmoid,                // classical SGNS: -log sig(v_f . v_c)
    complex_sigmoid_normalized,  // -log sig(D (2F - 1)), vectors normalized in the loss
    complex_direct_prob,         // -log p / -log(1-p), p = F of normalized vectors
    complex_sigmoid_unnormalized // -log sig(2|<v_f|v_c>|^2 - D)
};

inline LossVariant loss_variant_from_name(const std::string& name) {
    if (name == "real") return LossVariant::real_sigmoid;
    if (name == "sigmoid") return LossVariant::complex_sigmoid_normalized;
    if (name == "direct") return LossVariant::complex_direct_prob;
    if (name == "unnorm-sigmoid") return LossVariant::complex_sigmoid_unnormalized;
    throw std::invalid_argument("unknown loss variant: " + name);
}

inline bool loss_is_complex(LossVariant v) { return v != LossVariant::real_sigmoid; }

// log(1 + e^x), stable for large |x|
inline double softplus(double x) {
    if (x > 30.0) return x;
    if (x < -30.0) return std::exp(x);
    return std::log1p(std::exp(x));
}

inline double sigmoid(double x) {
    if (x >= 0.0) {
        const double z = std::exp(-x);
        return 1.0 / (1.0 + z);
    }
    const double z = std::exp(x);
    return z / (1.0 + z);
}

constexpr double kDirectProbEps = 1e-7;

// One pair term of the SGNS loss: sign = +1 for the true context,
// -1 for a negative. Loss value plus gradients w.r.t. every real
// component of both raw vectors (normalization, where the variant calls
// for it, happens inside and gradients flow through it).
struct TermGrad {
    double loss = 0.0;
    std::vector<double> d_f_re, d_f_im; // w.r.t. focal components
    std::vector<double> d_x_re, d_x_im; // w.r.t. context/negative components
};

namespace detail {

struct Overlap {
    double wr, wi;   // <a|b> = sum conj(a_j) b_j
    double A, B;     // |a|^2, |b|^2
    double w2;       // |<a|b>|^2
};

inline Overlap raw_overlap(std::span<const double> ar, std::span<const double> ai,
                           std::span<const double> br, std::span<const double> bi) {
    Overlap o{0, 0, 0, 0, 0};
    for (size_t j = 0; j < ar.size(); ++j) {
        o.wr += ar[j] * br[j] + ai[j] * bi[j];
        o.wi += ar[j] * bi[j] - ai[j] * br[j];
        o.A += ar[j] * ar[j] + ai[j] * ai[j];
        o.B += br[j] * br[j] + bi[j] * bi[j];
    }
    o.w2 = o.wr * o.wr + o.wi * o.wi;
    return o;
}

// Accumulate coeff * d|w|^2/dx into the gradient buffers (a-side and b-side).
inline void add_w2_grad(const Overlap& o, double coeff,
                        std::span<const double> ar, std::span<const double> ai,
                        std::span<const double> br, std::span<const double> bi,
                        std::span<double> gar, std::span<double> gai,
                        std::span<double> gbr, std::span<double> gbi) {
    for (size_t j = 0; j < ar.size(); ++j) {
        gar[j] += coeff * 2.0 * (o.wr * br[j] + o.wi * bi[j]);
        gai[j] += coeff * 2.0 * (o.wr * bi[j] - o.wi * br[j]);
        gbr[j] += coeff * 2.0 * (o.wr * ar[j] - o.wi * ai[j]);
        gbi[j] += coeff * 2.0 * (o.wr * ai[j] + o.wi * ar[j]);
    }
}

// Accumulate coeff * dp/dx for p = |w|^2 / (A B) (normalized fidelity).
inline void add_p_grad(const Overlap& o, double coeff,
                       std::span<const double> ar, std::span<const double> ai,
                       std::span<const double> br, std::span<const double> bi,
                       std::span<double> gar, std::span<double> gai,
                       std::span<double> gbr, std::span<double> gbi) {
    const double invAB = 1.0 / (o.A * o.B);
    const double p = o.w2 * invAB;
    for (size_t j = 0; j < ar.size(); ++j) {
        gar[j] += coeff * (2.0 * (o.wr * br[j] + o.wi * bi[j]) * invAB -
                           2.0 * p * ar[j] / o.A);
        gai[j] += coeff * (2.0 * (o.wr * bi[j] - o.wi * br[j]) * invAB -
                           2.0 * p * ai[j] / o.A);
        gbr[j] += coeff * (2.0 * (o.wr * ar[j] - o.wi * ai[j]) * invAB -
                           2.0 * p * br[j] / o.B);
        gbi[j] += coeff * (2.0 * (o.wr * ai[j] + o.wi * ar[j]) * invAB -
                           2.0 * p * bi[j] / o.B);
    }
}

} // namespace detail

// Loss value of a single term (no gradients).
inline double sgns_term_loss(LossVariant variant, int sign,
                             std::span<const double> fr, std::span<const double> fi,
                             std::span<const double> xr, std::span<const double> xi,
                             double D) {
    const double s = sign >= 0 ? 1.0 : -1.0;
    const auto o = detail::raw_overlap(fr, fi, xr, xi);
    switch (variant) {
        case LossVariant::real_sigmoid:
            return softplus(-s * o.wr);
        case LossVariant::complex_sigmoid_normalized: {
            if (o.A <= 0.0 || o.B <= 0.0)
                throw std::runtime_error("zero-norm embedding in loss");
            const double p = o.w2 / (o.A * o.B);
            return softplus(-s * D * (2.0 * p - 1.0));
        }
        case LossVariant::complex_sigmoid_unnormalized:
            return softplus(-s * (2.0 * o.w2 - D));
        case LossVariant::complex_direct_prob: {
            if (o.A <= 0.0 || o.B <= 0.0)
                throw std::runtime_error("zero-norm embedding in loss");
            double p = o.w2 / (o.A * o.B);
            p = std::min(1.0 - kDirectProbEps, std::max(kDirectProbEps, p));
            return sign >= 0 ? -std::log(p) : -std::log1p(-p);
        }
    }
    throw std::logic_error("unreachable");
}

// Term loss plus gradients, accumulated into the provided buffers (which
// must be zeroed or hold partial sums from other terms).
inline double sgns_term_grad(LossVariant variant, int sign,
                             std::span<const double> fr, std::span<const double> fi,
                             std::span<const double> xr, std::span<const double> xi,
                             double D,
                             std::span<double> gfr, std::span<double> gfi,
                             std::span<double> gxr, std::span<double> gxi) {
    const double s = sign >= 0 ? 1.0 : -1.0;
    const auto o = detail::raw_overlap(fr, fi, xr, xi);
    switch (variant) {
        case LossVariant::real_sigmoid: {
            const double coeff = -s * sigmoid(-s * o.wr); // dL/d(dot)
            for (size_t j = 0; j < fr.size(); ++j) {
                gfr[j] += coeff * xr[j];
                gxr[j] += coeff * fr[j];
            }
            return softplus(-s * o.wr);
        }
        case LossVariant::complex_sigmoid_normalized: {
            if (o.A <= 0.0 || o.B <= 0.0)
                throw std::runtime_error("zero-norm embedding in loss");
            const double p = o.w2 / (o.A * o.B);
            const double FD = D * (2.0 * p - 1.0);
            const double coeff = -s * sigmoid(-s * FD) * 2.0 * D; // dL/dp
            detail::add_p_grad(o, coeff, fr, fi, xr, xi, gfr, gfi, gxr, gxi);
            return softplus(-s * FD);
        }
        case LossVariant::complex_sigmoid_unnormalized: {
            const double FD = 2.0 * o.w2 - D;
            const double coeff = -s * sigmoid(-s * FD) * 2.0; // dL/d|w|^2
            detail::add_w2_grad(o, coeff, fr, fi, xr, xi, gfr, gfi, gxr, gxi);
            return softplus(-s * FD);
        }
        case LossVariant::complex_direct_prob: {
            if (o.A <= 0.0 || o.B <= 0.0)
                throw std::runtime_error("zero-norm embedding in loss");
            const double p = o.w2 / (o.A * o.B);
            const bool clamped = p < kDirectProbEps || p > 1.0 - kDirectProbEps;
            const double pc =
                std::min(1.0 - kDirectProbEps, std::max(kDirectProbEps, p));
            const double coeff = clamped ? 0.0 : (sign >= 0 ? -1.0 / pc : 1.0 / (1.0 - pc));
            if (coeff != 0.0)
                detail::add_p_grad(o, coeff, fr, fi, xr, xi, gfr, gfi, gxr, gxi);
            return sign >= 0 ? -std::log(pc) : -std::log1p(-pc);
        }
    }
    throw std::logic_error("unreachable");
}

} // namespace qembed
