#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

namespace qembed {

// A complex vector stored as split real/imaginary arrays. Real-mode
// embeddings are the special case im == 0.
struct ComplexVec {
    std::vector<double> re;
    std::vector<double> im;

    ComplexVec() = default;
    explicit ComplexVec(size_t d) : re(d, 0.0), im(d, 0.0) {}
    ComplexVec(std::vector<double> r, std::vector<double> i)
        : re(std::move(r)), im(std::move(i)) {
        if (re.size() != im.size())
            throw std::invalid_argument("re/im length mismatch");
    }

    size_t dim() const { return re.size(); }
};

inline double norm_sq(std::span<const double> re, std::span<const double> im) {
    double s = 0.0;
    for (size_t j = 0; j < re.size(); ++j) s += re[j] * re[j] + im[j] * im[j];
    return s;
}

inline double norm_sq(const ComplexVec& v) { return norm_sq(v.re, v.im); }

// <u|v> = sum_j conj(u_j) v_j  (conjugate-linear in the first argument)
inline std::complex<double> inner_product(std::span<const double> ure,
                                          std::span<const double> uim,
                                          std::span<const double> vre,
                                          std::span<const double> vim) {
    if (ure.size() != vre.size())
        throw std::invalid_argument("inner_product: dimension mismatch");
    double wr = 0.0, wi = 0.0;
    for (size_t j = 0; j < ure.size(); ++j) {
        wr += ure[j] * vre[j] + uim[j] * vim[j];
        wi += ure[j] * vim[j] - uim[j] * vre[j];
    }
    return {wr, wi};
}

inline std::complex<double> inner_product(const ComplexVec& u, const ComplexVec& v) {
    // qualified: ADL on the vector members would otherwise also find
    // std::inner_product
    return qembed::inner_product(std::span<const double>(u.re),
                                 std::span<const double>(u.im),
                                 std::span<const double>(v.re),
                                 std::span<const double>(v.im));
}

constexpr double kNormCheckTol = 1e-6;

// F = |<u|v>|^2 for normalized inputs. With auto_normalize the raw overlap
// is divided by the norms instead of erroring.
inline double fidelity(const ComplexVec& u, const ComplexVec& v,
                       bool auto_normalize = false) {
    const double nu = norm_sq(u), nv = norm_sq(v);
    if (!auto_normalize) {
        if (std::abs(nu - 1.0) > kNormCheckTol || std::abs(nv - 1.0) > kNormCheckTol)
            throw std::invalid_argument("fidelity: input not normalized");
    }
    if (nu <= 0.0 || nv <= 0.0)
        throw std::invalid_argument("fidelity: zero-norm embedding");
    const std::complex<double> w = inner_product(u, v);
    return std::norm(w) / (nu * nv);
}

// Eq.-style scaled overlap for normalized vectors: D (2F - 1) in [-D, D].
inline double scaled_fidelity_normalized(const ComplexVec& u, const ComplexVec& v,
                                         double D, bool auto_normalize = false) {
    return D * (2.0 * fidelity(u, v, auto_normalize) - 1.0);
}

// Unnormalized variant: 2 |<u|v>|^2 - D in [-D, inf).
inline double scaled_overlap_unnormalized(const ComplexVec& u, const ComplexVec& v,
                                          double D) {
    return 2.0 * std::norm(inner_product(u, v)) - D;
}

inline void normalize_in_place(std::span<double> re, std::span<double> im) {
    const double n = std::sqrt(norm_sq(re, im));
    if (n <= 0.0) throw std::invalid_argument("zero-norm embedding");
    const double inv = 1.0 / n;
    for (size_t j = 0; j < re.size(); ++j) {
        re[j] *= inv;
        im[j] *= inv;
    }
}

inline ComplexVec normalize(const ComplexVec& v) {
    ComplexVec out = v;
    normalize_in_place(out.re, out.im);
    return out;
}

} // namespace qembed
