#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qembed/complex_ops.hpp"
#include "qembed/rng.hpp"
#include "qembed/vocab.hpp"

namespace qembed {

enum class EmbeddingMode : uint8_t { real = 0, complex = 1 };

// Per-word complex vectors for one role (focal or context), stored as
// split re/im blocks per row.
class EmbeddingTable {
  public:
    EmbeddingTable() = default;
    EmbeddingTable(size_t rows, size_t dim)
        : rows_(rows), dim_(dim), re_(rows * dim, 0.0), im_(rows * dim, 0.0) {}

    size_t rows() const { return rows_; }
    size_t dim() const { return dim_; }

    std::span<double> re(size_t row) { return {re_.data() + row * dim_, dim_}; }
    std::span<double> im(size_t row) { return {im_.data() + row * dim_, dim_}; }
    std::span<const double> re(size_t row) const { return {re_.data() + row * dim_, dim_}; }
    std::span<const double> im(size_t row) const { return {im_.data() + row * dim_, dim_}; }

    ComplexVec row(size_t r) const {
        auto rr = re(r);
        auto ri = im(r);
        return ComplexVec(std::vector<double>(rr.begin(), rr.end()),
                          std::vector<double>(ri.begin(), ri.end()));
    }

    void set_row(size_t r, const ComplexVec& v) {
        if (v.dim() != dim_) throw std::invalid_argument("row dimension mismatch");
        auto rr = re(r);
        auto ri = im(r);
        for (size_t j = 0; j < dim_; ++j) {
            rr[j] = v.re[j];
            ri[j] = v.im[j];
        }
    }

    double* re_data() { return re_.data(); }
    double* im_data() { return im_.data(); }
    const double* re_data() const { return re_.data(); }
    const double* im_data() const { return im_.data(); }

  private:
    size_t rows_ = 0, dim_ = 0;
    std::vector<double> re_, im_;
};

// Focal and context tables for a vocabulary.
struct ComplexEmbeddingMatrix {
    EmbeddingTable focal;
    EmbeddingTable context;
    EmbeddingMode mode = EmbeddingMode::complex;

    ComplexEmbeddingMatrix() = default;
    ComplexEmbeddingMatrix(size_t vocab, size_t dim, EmbeddingMode m)
        : focal(vocab, dim), context(vocab, dim), mode(m) {}

    size_t dim() const { return focal.dim(); }
    size_t vocab_size() const { return focal.rows(); }

    // Uniform init in (-0.5/d, 0.5/d) per real component, both roles.
    // Zero context rows would kill the overlap gradient in complex modes.
    void randomize(uint64_t seed) {
        Rng rng(Rng::derive(seed, 0xe2b));
        const double half = 0.5 / static_cast<double>(dim());
        const bool cplx = mode == EmbeddingMode::complex;
        for (EmbeddingTable* t : {&focal, &context}) {
            for (size_t r = 0; r < t->rows(); ++r) {
                auto re = t->re(r);
                auto im = t->im(r);
                for (size_t j = 0; j < re.size(); ++j) {
                    re[j] = rng.uniform(-half, half);
                    im[j] = cplx ? rng.uniform(-half, half) : 0.0;
                }
            }
        }
    }
};

} // namespace qembed
