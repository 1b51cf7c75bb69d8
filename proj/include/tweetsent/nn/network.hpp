#ifndef TWEETSENT_NN_NETWORK_HPP
#define TWEETSENT_NN_NETWORK_HPP

#include <cassert>
#include <memory>
#include <string>
#include <vector>

#include "tweetsent/common.hpp"
#include "tweetsent/nn/layers.hpp"
#include "tweetsent/nn/tensor.hpp"

namespace tweetsent::nn {

enum class LossKind { CrossEntropy, Quadratic };

inline std::string_view loss_name(LossKind k) {
  return k == LossKind::CrossEntropy ? "cross-entropy" : "quadratic";
}

inline LossKind loss_from_name(std::string_view name) {
  if (name == "cross-entropy" || name == "ce") return LossKind::CrossEntropy;
  if (name == "quadratic" || name == "mse") return LossKind::Quadratic;
  throw DataError("unknown loss kind: " + std::string(name));
}

template <typename T>
class Network {
 public:
  Network(std::uint64_t seed, LossKind loss, std::size_t input_len)
      : seed_(seed), loss_(loss), input_len_(input_len),
        dropout_rng_(derive_seed(seed, "dropout")) {}

  void add(std::unique_ptr<Layer<T>> layer) { layers_.push_back(std::move(layer)); }

  // Dropout (and any other stochastic layer behaviour) draws from a
  // dedicated stream; reseeding it makes whole training runs repeatable.
  void reset_dropout_rng() { dropout_rng_.seed(derive_seed(seed_, "dropout")); }

  Tensor<T> forward(const Tensor<T>& indices, bool training) {
    if (indices.rank() != 2 || indices.dim(1) != input_len_) {
      throw DataError("input sequence length " +
                      std::to_string(indices.rank() == 2 ? indices.dim(1) : 0) +
                      " does not match network length " +
                      std::to_string(input_len_));
    }
    Tensor<T> cur = indices;
    for (auto& layer : layers_) {
      cur = layer->forward(cur, training, dropout_rng_);
      assert(cur.all_finite());
    }
    return cur;
  }

  // Mean loss over the batch. Cross-entropy adapts to the output head:
  // categorical for a softmax head, per-unit binary (averaged over units)
  // for a sigmoid head. Quadratic is sum ||y - a||^2 / (2 n).
  T loss_value(const Tensor<T>& scores, const Tensor<T>& targets) const {
    check_pair(scores, targets);
    const std::size_t B = scores.dim(0), K = scores.dim(1);
    const T eps = static_cast<T>(1e-7);
    T total = T(0);
    for (std::size_t b = 0; b < B; ++b) {
      T sample = T(0);
      if (loss_ == LossKind::Quadratic) {
        for (std::size_t k = 0; k < K; ++k) {
          const T d = targets.at(b, k) - scores.at(b, k);
          sample += d * d;
        }
        sample *= T(0.5);
      } else if (output_activation() == Activation::Softmax) {
        for (std::size_t k = 0; k < K; ++k) {
          if (targets.at(b, k) > T(0)) {
            sample -= targets.at(b, k) *
                      std::log(std::max(scores.at(b, k), eps));
          }
        }
      } else {
        for (std::size_t k = 0; k < K; ++k) {
          const T s = std::min(std::max(scores.at(b, k), eps), T(1) - eps);
          const T t = targets.at(b, k);
          sample -= t * std::log(s) + (T(1) - t) * std::log(T(1) - s);
        }
        sample /= static_cast<T>(K);
      }
      total += sample * sample_weight(targets, b);
    }
    return total / static_cast<T>(B);
  }

  Tensor<T> loss_grad(const Tensor<T>& scores, const Tensor<T>& targets) const {
    check_pair(scores, targets);
    const std::size_t B = scores.dim(0), K = scores.dim(1);
    const T eps = static_cast<T>(1e-7);
    Tensor<T> g({B, K});
    for (std::size_t b = 0; b < B; ++b) {
      const T w = sample_weight(targets, b) / static_cast<T>(B);
      for (std::size_t k = 0; k < K; ++k) {
        const T s = scores.at(b, k);
        const T t = targets.at(b, k);
        if (loss_ == LossKind::Quadratic) {
          g.at(b, k) = (s - t) * w;
        } else if (output_activation() == Activation::Softmax) {
          g.at(b, k) = t > T(0) ? -t / std::max(s, eps) * w : T(0);
        } else {
          const T sc = std::min(std::max(s, eps), T(1) - eps);
          g.at(b, k) = (-t / sc + (T(1) - t) / (T(1) - sc)) * w /
                       static_cast<T>(K);
        }
      }
    }
    return g;
  }

  void backward(const Tensor<T>& scores, const Tensor<T>& targets) {
    zero_grad();
    Tensor<T> g = loss_grad(scores, targets);
    for (auto it = layers_.rbegin(); it != layers_.rend(); ++it) {
      g = (*it)->backward(g);
      assert(g.size() == 0 || g.all_finite());
    }
  }

  void zero_grad() {
    for (auto& layer : layers_) layer->zero_grad();
  }

  std::vector<Tensor<T>*> parameters() {
    std::vector<Tensor<T>*> out;
    for (auto& layer : layers_) {
      for (Tensor<T>* p : layer->parameters()) out.push_back(p);
    }
    return out;
  }
  std::vector<Tensor<T>*> gradients() {
    std::vector<Tensor<T>*> out;
    for (auto& layer : layers_) {
      for (Tensor<T>* g : layer->gradients()) out.push_back(g);
    }
    return out;
  }
  std::vector<Tensor<T>*> state() {
    std::vector<Tensor<T>*> out;
    for (auto& layer : layers_) {
      for (Tensor<T>* s : layer->state()) out.push_back(s);
    }
    return out;
  }

  Activation output_activation() const {
    for (auto it = layers_.rbegin(); it != layers_.rend(); ++it) {
      if (auto* dense = dynamic_cast<const Dense<T>*>(it->get())) {
        return dense->activation();
      }
    }
    return Activation::Identity;
  }

  // Optional per-class loss weights (index = class); empty means uniform.
  void set_class_weights(std::vector<T> weights) {
    class_weights_ = std::move(weights);
  }
  const std::vector<T>& class_weights() const { return class_weights_; }

  const std::vector<std::unique_ptr<Layer<T>>>& layers() const { return layers_; }
  std::vector<std::unique_ptr<Layer<T>>>& layers() { return layers_; }
  LossKind loss_kind() const { return loss_; }
  std::uint64_t seed() const { return seed_; }
  std::size_t input_len() const { return input_len_; }

 private:
  static void check_pair(const Tensor<T>& scores, const Tensor<T>& targets) {
    if (!scores.same_shape(targets)) {
      throw DataError("scores/targets shape mismatch");
    }
  }

  T sample_weight(const Tensor<T>& targets, std::size_t b) const {
    if (class_weights_.empty()) return T(1);
    std::size_t cls = 0;
    T best = targets.at(b, 0);
    for (std::size_t k = 1; k < targets.dim(1); ++k) {
      if (targets.at(b, k) > best) {
        best = targets.at(b, k);
        cls = k;
      }
    }
    return cls < class_weights_.size() ? class_weights_[cls] : T(1);
  }

  std::vector<std::unique_ptr<Layer<T>>> layers_;
  std::uint64_t seed_;
  LossKind loss_;
  std::size_t input_len_;
  Rng dropout_rng_;
  std::vector<T> class_weights_;
};

inline std::size_t argmax_row(const std::vector<float>& row) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < row.size(); ++k) {
    if (row[k] > row[best]) best = k;
  }
  return best;
}

template <typename T>
std::vector<std::size_t> argmax_rows(const Tensor<T>& scores) {
  std::vector<std::size_t> out(scores.dim(0));
  for (std::size_t b = 0; b < scores.dim(0); ++b) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < scores.dim(1); ++k) {
      if (scores.at(b, k) > scores.at(b, best)) best = k;
    }
    out[b] = best;
  }
  return out;
}

}  // namespace tweetsent::nn

#endif
