#ifndef TWEETSENT_NN_ADAM_HPP
#define TWEETSENT_NN_ADAM_HPP

#include <cmath>
#include <cstdint>
#include <vector>

#include "tweetsent/common.hpp"
#include "tweetsent/nn/tensor.hpp"

namespace tweetsent::nn {

// Adaptive-moment optimizer; defaults are the usual lr 1e-3, betas
// 0.9/0.999, epsilon 1e-8. Optional global gradient max-norm clip.
template <typename T>
class Adam {
 public:
  explicit Adam(T lr = static_cast<T>(1e-3), T beta1 = static_cast<T>(0.9),
                T beta2 = static_cast<T>(0.999), T eps = static_cast<T>(1e-8),
                double max_grad_norm = 0.0)
      : lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps),
        max_grad_norm_(max_grad_norm) {}

  void step(const std::vector<Tensor<T>*>& params,
            const std::vector<Tensor<T>*>& grads) {
    if (params.size() != grads.size()) {
      throw NumericError("optimizer parameter/gradient list mismatch");
    }
    if (m_.empty()) {
      for (Tensor<T>* p : params) {
        m_.emplace_back(p->shape);
        v_.emplace_back(p->shape);
      }
    }
    double clip_scale = 1.0;
    if (max_grad_norm_ > 0.0) {
      double sq = 0.0;
      for (Tensor<T>* g : grads) {
        for (T gv : g->data) sq += static_cast<double>(gv) * gv;
      }
      const double norm = std::sqrt(sq);
      if (norm > max_grad_norm_) clip_scale = max_grad_norm_ / norm;
    }
    ++t_;
    const T bc1 = T(1) - static_cast<T>(std::pow(beta1_, t_));
    const T bc2 = T(1) - static_cast<T>(std::pow(beta2_, t_));
    for (std::size_t i = 0; i < params.size(); ++i) {
      Tensor<T>& p = *params[i];
      const Tensor<T>& g = *grads[i];
      Tensor<T>& m = m_[i];
      Tensor<T>& v = v_[i];
      if (!p.same_shape(g) || !p.same_shape(m)) {
        throw NumericError("optimizer state shape mismatch");
      }
      for (std::size_t k = 0; k < p.size(); ++k) {
        const T gv = g.at(k) * static_cast<T>(clip_scale);
        m.at(k) = beta1_ * m.at(k) + (T(1) - beta1_) * gv;
        v.at(k) = beta2_ * v.at(k) + (T(1) - beta2_) * gv * gv;
        const T mhat = m.at(k) / bc1;
        const T vhat = v.at(k) / bc2;
        p.at(k) -= lr_ * mhat / (std::sqrt(vhat) + eps_);
      }
    }
  }

  std::int64_t step_count() const { return t_; }
  T learning_rate() const { return lr_; }

 private:
  T lr_, beta1_, beta2_, eps_;
  double max_grad_norm_;
  std::int64_t t_ = 0;
  std::vector<Tensor<T>> m_, v_;
};

}  // namespace tweetsent::nn

#endif
