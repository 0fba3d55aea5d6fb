#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace qembed {

// Standard first/second-moment adaptive optimizer with bias correction.
class Adam {
  public:
    explicit Adam(size_t n, double lr = 0.001, double beta1 = 0.9,
                  double beta2 = 0.999, double eps = 1e-8)
        : lr_(lr), b1_(beta1), b2_(beta2), eps_(eps), m_(n, 0.0), v_(n, 0.0) {}

    void step(std::span<double> params, std::span<const double> grad) {
        ++t_;
        const double c1 = 1.0 - std::pow(b1_, t_);
        const double c2 = 1.0 - std::pow(b2_, t_);
        for (size_t i = 0; i < params.size(); ++i) {
            m_[i] = b1_ * m_[i] + (1.0 - b1_) * grad[i];
            v_[i] = b2_ * v_[i] + (1.0 - b2_) * grad[i] * grad[i];
            params[i] -= lr_ * (m_[i] / c1) / (std::sqrt(v_[i] / c2) + eps_);
        }
    }

    double lr() const { return lr_; }

  private:
    double lr_, b1_, b2_, eps_;
    int64_t t_ = 0;
    std::vector<double> m_, v_;
};

} // namespace qembed
