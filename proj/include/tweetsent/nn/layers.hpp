#ifndef TWEETSENT_NN_LAYERS_HPP
#define TWEETSENT_NN_LAYERS_HPP

#include <Eigen/Core>
#include <cmath>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "tweetsent/common.hpp"
#include "tweetsent/nn/tensor.hpp"

namespace tweetsent::nn {

enum class Activation { Identity, ReLU, Sigmoid, Softmax };

inline std::string_view activation_name(Activation a) {
  switch (a) {
    case Activation::Identity: return "identity";
    case Activation::ReLU: return "relu";
    case Activation::Sigmoid: return "sigmoid";
    case Activation::Softmax: return "softmax";
  }
  return "?";
}

inline Activation activation_from_name(std::string_view name) {
  if (name == "identity") return Activation::Identity;
  if (name == "relu") return Activation::ReLU;
  if (name == "sigmoid") return Activation::Sigmoid;
  if (name == "softmax") return Activation::Softmax;
  throw DataError("unknown activation: " + std::string(name));
}

template <typename T>
using MatrixRM =
    Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename T>
using MatMap = Eigen::Map<MatrixRM<T>>;
template <typename T>
using ConstMatMap = Eigen::Map<const MatrixRM<T>>;

// (rows, cols) view over a rank-2 tensor
template <typename T>
MatMap<T> as_matrix(Tensor<T>& t) {
  return MatMap<T>(t.data.data(), static_cast<Eigen::Index>(t.dim(0)),
                   static_cast<Eigen::Index>(t.size() / t.dim(0)));
}
template <typename T>
ConstMatMap<T> as_matrix(const Tensor<T>& t) {
  return ConstMatMap<T>(t.data.data(), static_cast<Eigen::Index>(t.dim(0)),
                        static_cast<Eigen::Index>(t.size() / t.dim(0)));
}

// (B, inner) view of time step `t` of a (B, L, inner) tensor
template <typename T>
using StridedMap = Eigen::Map<MatrixRM<T>, 0, Eigen::OuterStride<>>;
template <typename T>
using ConstStridedMap = Eigen::Map<const MatrixRM<T>, 0, Eigen::OuterStride<>>;

template <typename T>
StridedMap<T> time_slice(Tensor<T>& x, std::size_t t) {
  const auto B = static_cast<Eigen::Index>(x.dim(0));
  const auto L = x.dim(1);
  const auto inner = static_cast<Eigen::Index>(x.dim(2));
  return StridedMap<T>(x.data.data() + t * x.dim(2), B, inner,
                       Eigen::OuterStride<>(static_cast<Eigen::Index>(L) * inner));
}
template <typename T>
ConstStridedMap<T> time_slice(const Tensor<T>& x, std::size_t t) {
  const auto B = static_cast<Eigen::Index>(x.dim(0));
  const auto L = x.dim(1);
  const auto inner = static_cast<Eigen::Index>(x.dim(2));
  return ConstStridedMap<T>(
      x.data.data() + t * x.dim(2), B, inner,
      Eigen::OuterStride<>(static_cast<Eigen::Index>(L) * inner));
}

template <typename T>
void glorot_uniform(Tensor<T>& w, std::size_t fan_in, std::size_t fan_out,
                    Rng& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  std::uniform_real_distribution<double> dist(-limit, limit);
  for (T& v : w.data) v = static_cast<T>(dist(rng));
}

template <typename T>
void uniform_init(Tensor<T>& w, double lo, double hi, Rng& rng) {
  std::uniform_real_distribution<double> dist(lo, hi);
  for (T& v : w.data) v = static_cast<T>(dist(rng));
}

template <typename T>
class Layer {
 public:
  virtual ~Layer() = default;

  virtual Tensor<T> forward(const Tensor<T>& x, bool training, Rng& rng) = 0;
  virtual Tensor<T> backward(const Tensor<T>& grad_out) = 0;

  // Trainable parameters (what the optimizer and the gradient check see).
  virtual std::vector<Tensor<T>*> parameters() { return {}; }
  virtual std::vector<Tensor<T>*> gradients() { return {}; }
  // Everything a checkpoint must persist (includes frozen tables).
  virtual std::vector<Tensor<T>*> state() { return {}; }

  virtual void zero_grad() {
    for (Tensor<T>* g : gradients()) g->fill(T(0));
  }

  virtual std::string_view kind() const = 0;
};

// ---------------------------------------------------------------------------
// Embedding: (B, L) integer-valued indices -> (B, L, d)

template <typename T>
class Embedding : public Layer<T> {
 public:
  Embedding(std::size_t vocab_size, std::size_t dim, bool trainable)
      : table_({vocab_size, dim}), grad_({vocab_size, dim}),
        trainable_(trainable) {}

  // Scratch initialization: uniform(-0.05, 0.05), padding row zero.
  void init_scratch(Rng& rng) {
    uniform_init(table_, -0.05, 0.05, rng);
    for (std::size_t k = 0; k < table_.dim(1); ++k) table_.at(0, k) = T(0);
  }

  void load_rows(const float* data, std::size_t rows, std::size_t dim) {
    if (rows != table_.dim(0) || dim != table_.dim(1)) {
      throw DataError("embedding table shape mismatch");
    }
    for (std::size_t i = 0; i < table_.size(); ++i) {
      table_.at(i) = static_cast<T>(data[i]);
    }
  }

  Tensor<T> forward(const Tensor<T>& x, bool, Rng&) override {
    const std::size_t B = x.dim(0), L = x.dim(1), d = table_.dim(1);
    indices_.assign(B * L, 0);
    Tensor<T> out({B, L, d});
    for (std::size_t i = 0; i < B * L; ++i) {
      const auto idx = static_cast<std::size_t>(x.at(i));
      if (idx >= table_.dim(0)) throw DataError("token index out of range");
      indices_[i] = idx;
      const T* src = table_.data.data() + idx * d;
      std::copy(src, src + d, out.data.data() + i * d);
    }
    return out;
  }

  Tensor<T> backward(const Tensor<T>& grad_out) override {
    if (trainable_) {
      const std::size_t d = table_.dim(1);
      for (std::size_t i = 0; i < indices_.size(); ++i) {
        T* dst = grad_.data.data() + indices_[i] * d;
        const T* src = grad_out.data.data() + i * d;
        for (std::size_t k = 0; k < d; ++k) dst[k] += src[k];
      }
    }
    return Tensor<T>{};  // no gradient below the input layer
  }

  std::vector<Tensor<T>*> parameters() override {
    if (!trainable_) return {};
    return {&table_};
  }
  std::vector<Tensor<T>*> gradients() override {
    if (!trainable_) return {};
    return {&grad_};
  }
  std::vector<Tensor<T>*> state() override { return {&table_}; }

  std::string_view kind() const override { return "embedding"; }

  std::size_t vocab_size() const { return table_.dim(0); }
  std::size_t dim() const { return table_.dim(1); }
  bool trainable() const { return trainable_; }
  Tensor<T>& table() { return table_; }

 private:
  Tensor<T> table_, grad_;
  bool trainable_;
  std::vector<std::size_t> indices_;
};

// ---------------------------------------------------------------------------
// Dense: (B, in) -> (B, out), activation fused.

template <typename T>
class Dense : public Layer<T> {
 public:
  Dense(std::size_t in, std::size_t out, Activation act)
      : w_({in, out}), b_({out}), gw_({in, out}), gb_({out}), act_(act) {}

  void init(Rng& rng) { glorot_uniform(w_, w_.dim(0), w_.dim(1), rng); }

  Tensor<T> forward(const Tensor<T>& x, bool, Rng&) override {
    const std::size_t B = x.dim(0);
    input_ = x;
    Tensor<T> out({B, w_.dim(1)});
    as_matrix(out).noalias() = as_matrix(x) * as_matrix(w_);
    auto out_m = as_matrix(out);
    for (Eigen::Index i = 0; i < out_m.rows(); ++i) {
      for (Eigen::Index j = 0; j < out_m.cols(); ++j) {
        out_m(i, j) += b_.at(static_cast<std::size_t>(j));
      }
    }
    apply_activation(out);
    output_ = out;
    return out;
  }

  Tensor<T> backward(const Tensor<T>& grad_out) override {
    Tensor<T> gz = grad_out;
    const std::size_t B = gz.dim(0), K = gz.dim(1);
    switch (act_) {
      case Activation::Identity:
        break;
      case Activation::ReLU:
        for (std::size_t i = 0; i < gz.size(); ++i) {
          if (output_.at(i) <= T(0)) gz.at(i) = T(0);
        }
        break;
      case Activation::Sigmoid:
        for (std::size_t i = 0; i < gz.size(); ++i) {
          const T y = output_.at(i);
          gz.at(i) *= y * (T(1) - y);
        }
        break;
      case Activation::Softmax:
        for (std::size_t b = 0; b < B; ++b) {
          T dot = T(0);
          for (std::size_t k = 0; k < K; ++k) {
            dot += grad_out.at(b, k) * output_.at(b, k);
          }
          for (std::size_t k = 0; k < K; ++k) {
            gz.at(b, k) = output_.at(b, k) * (grad_out.at(b, k) - dot);
          }
        }
        break;
    }
    as_matrix(gw_).noalias() +=
        as_matrix(input_).transpose() * as_matrix(gz);
    for (std::size_t b = 0; b < B; ++b) {
      for (std::size_t k = 0; k < K; ++k) gb_.at(k) += gz.at(b, k);
    }
    Tensor<T> gx({input_.dim(0), w_.dim(0)});
    as_matrix(gx).noalias() = as_matrix(gz) * as_matrix(w_).transpose();
    return gx;
  }

  std::vector<Tensor<T>*> parameters() override { return {&w_, &b_}; }
  std::vector<Tensor<T>*> gradients() override { return {&gw_, &gb_}; }
  std::vector<Tensor<T>*> state() override { return {&w_, &b_}; }

  std::string_view kind() const override { return "dense"; }

  std::size_t in_features() const { return w_.dim(0); }
  std::size_t out_features() const { return w_.dim(1); }
  Activation activation() const { return act_; }

 private:
  void apply_activation(Tensor<T>& z) {
    switch (act_) {
      case Activation::Identity:
        return;
      case Activation::ReLU:
        for (T& v : z.data) v = v > T(0) ? v : T(0);
        return;
      case Activation::Sigmoid:
        for (T& v : z.data) v = T(1) / (T(1) + std::exp(-v));
        return;
      case Activation::Softmax: {
        const std::size_t B = z.dim(0), K = z.dim(1);
        for (std::size_t b = 0; b < B; ++b) {
          T mx = z.at(b, 0);
          for (std::size_t k = 1; k < K; ++k) mx = std::max(mx, z.at(b, k));
          T sum = T(0);
          for (std::size_t k = 0; k < K; ++k) {
            T e = std::exp(z.at(b, k) - mx);
            z.at(b, k) = e;
            sum += e;
          }
          for (std::size_t k = 0; k < K; ++k) z.at(b, k) /= sum;
        }
        return;
      }
    }
  }

  Tensor<T> w_, b_, gw_, gb_;
  Activation act_;
  Tensor<T> input_, output_;
};

// ---------------------------------------------------------------------------
// Gated LSTM over (B, L, d_in); emits the final hidden state (B, units).
// Gate blocks are ordered [input | forget | candidate | output] inside the
// fused weight matrices; the forget-gate bias starts at 1.

template <typename T>
class Lstm : public Layer<T> {
 public:
  Lstm(std::size_t input_dim, std::size_t units, double dropout,
       double recurrent_dropout)
      : w_({input_dim, 4 * units}), u_({units, 4 * units}), b_({4 * units}),
        gw_({input_dim, 4 * units}), gu_({units, 4 * units}), gb_({4 * units}),
        units_(units), dropout_(dropout), recurrent_dropout_(recurrent_dropout) {
    if (dropout < 0 || dropout >= 1 || recurrent_dropout < 0 ||
        recurrent_dropout >= 1) {
      throw UsageError("dropout rates must lie in [0, 1)");
    }
    for (std::size_t k = 0; k < units_; ++k) b_.at(units_ + k) = T(1);
  }

  void init(Rng& rng) {
    glorot_uniform(w_, w_.dim(0), units_, rng);
    // scaled uniform for the recurrent weights (fan_in = fan_out = units)
    glorot_uniform(u_, units_, units_, rng);
    b_.fill(T(0));
    for (std::size_t k = 0; k < units_; ++k) b_.at(units_ + k) = T(1);
  }

  Tensor<T> forward(const Tensor<T>& x, bool training, Rng& rng) override {
    const std::size_t B = x.dim(0), L = x.dim(1), d = x.dim(2);
    if (d != w_.dim(0)) throw DataError("lstm input width mismatch");
    const std::size_t h = units_;

    // Variational dropout: one input mask and one recurrent mask per
    // sequence, reused across all time steps.
    in_mask_ = make_mask({B, d}, dropout_, training, rng);
    rec_mask_ = make_mask({B, h}, recurrent_dropout_, training, rng);

    xm_ = Tensor<T>({B, L, d});
    for (std::size_t b = 0; b < B; ++b) {
      for (std::size_t t = 0; t < L; ++t) {
        for (std::size_t k = 0; k < d; ++k) {
          xm_.at(b, t, k) = x.at(b, t, k) * in_mask_.at(b, k);
        }
      }
    }

    gate_i_ = Tensor<T>({B, L, h});
    gate_f_ = Tensor<T>({B, L, h});
    gate_g_ = Tensor<T>({B, L, h});
    gate_o_ = Tensor<T>({B, L, h});
    cell_ = Tensor<T>({B, L, h});
    tanh_cell_ = Tensor<T>({B, L, h});
    hm_ = Tensor<T>({B, L, h});

    Tensor<T> hprev({B, h});
    Tensor<T> cprev({B, h});
    Tensor<T> z({B, 4 * h});

    for (std::size_t t = 0; t < L; ++t) {
      auto hm_t = time_slice(hm_, t);
      for (std::size_t b = 0; b < B; ++b) {
        for (std::size_t k = 0; k < h; ++k) {
          hm_t(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(k)) =
              hprev.at(b, k) * rec_mask_.at(b, k);
        }
      }
      as_matrix(z).noalias() = time_slice(xm_, t) * as_matrix(w_);
      as_matrix(z).noalias() += time_slice(hm_, t) * as_matrix(u_);
      for (std::size_t b = 0; b < B; ++b) {
        for (std::size_t k = 0; k < 4 * h; ++k) z.at(b, k) += b_.at(k);
      }
      for (std::size_t b = 0; b < B; ++b) {
        for (std::size_t k = 0; k < h; ++k) {
          const T zi = z.at(b, k);
          const T zf = z.at(b, h + k);
          const T zg = z.at(b, 2 * h + k);
          const T zo = z.at(b, 3 * h + k);
          const T gi = sigmoid(zi);
          const T gf = sigmoid(zf);
          const T gg = std::tanh(zg);
          const T go = sigmoid(zo);
          const T c = gf * cprev.at(b, k) + gi * gg;
          const T tc = std::tanh(c);
          gate_i_.at(b, t, k) = gi;
          gate_f_.at(b, t, k) = gf;
          gate_g_.at(b, t, k) = gg;
          gate_o_.at(b, t, k) = go;
          cell_.at(b, t, k) = c;
          tanh_cell_.at(b, t, k) = tc;
          cprev.at(b, k) = c;
          hprev.at(b, k) = go * tc;
        }
      }
    }
    seq_len_ = L;
    return hprev;
  }

  Tensor<T> backward(const Tensor<T>& grad_out) override {
    const std::size_t B = xm_.dim(0), L = seq_len_, d = xm_.dim(2);
    const std::size_t h = units_;

    Tensor<T> dx({B, L, d});
    Tensor<T> dh = grad_out;      // gradient wrt h_t
    Tensor<T> dc({B, h});         // gradient wrt c_t
    Tensor<T> dz({B, 4 * h});
    Tensor<T> dhm({B, h});

    for (std::size_t t = L; t-- > 0;) {
      for (std::size_t b = 0; b < B; ++b) {
        for (std::size_t k = 0; k < h; ++k) {
          const T gi = gate_i_.at(b, t, k);
          const T gf = gate_f_.at(b, t, k);
          const T gg = gate_g_.at(b, t, k);
          const T go = gate_o_.at(b, t, k);
          const T tc = tanh_cell_.at(b, t, k);
          const T cprev = t == 0 ? T(0) : cell_.at(b, t - 1, k);

          const T dht = dh.at(b, k);
          T dct = dc.at(b, k) + dht * go * (T(1) - tc * tc);
          const T dgo = dht * tc;
          const T dgi = dct * gg;
          const T dgg = dct * gi;
          const T dgf = dct * cprev;

          dz.at(b, k) = dgi * gi * (T(1) - gi);
          dz.at(b, h + k) = dgf * gf * (T(1) - gf);
          dz.at(b, 2 * h + k) = dgg * (T(1) - gg * gg);
          dz.at(b, 3 * h + k) = dgo * go * (T(1) - go);
          dc.at(b, k) = dct * gf;
        }
      }
      as_matrix(gw_).noalias() += time_slice(xm_, t).transpose() * as_matrix(dz);
      as_matrix(gu_).noalias() += time_slice(hm_, t).transpose() * as_matrix(dz);
      for (std::size_t b = 0; b < B; ++b) {
        for (std::size_t k = 0; k < 4 * h; ++k) gb_.at(k) += dz.at(b, k);
      }
      time_slice(dx, t).noalias() = as_matrix(dz) * as_matrix(w_).transpose();
      for (std::size_t b = 0; b < B; ++b) {
        for (std::size_t k = 0; k < d; ++k) {
          dx.at(b, t, k) *= in_mask_.at(b, k);
        }
      }
      as_matrix(dhm).noalias() = as_matrix(dz) * as_matrix(u_).transpose();
      for (std::size_t b = 0; b < B; ++b) {
        for (std::size_t k = 0; k < h; ++k) {
          dh.at(b, k) = dhm.at(b, k) * rec_mask_.at(b, k);
        }
      }
    }
    return dx;
  }

  std::vector<Tensor<T>*> parameters() override { return {&w_, &u_, &b_}; }
  std::vector<Tensor<T>*> gradients() override { return {&gw_, &gu_, &gb_}; }
  std::vector<Tensor<T>*> state() override { return {&w_, &u_, &b_}; }

  std::string_view kind() const override { return "lstm"; }

  std::size_t input_dim() const { return w_.dim(0); }
  std::size_t units() const { return units_; }
  double dropout_rate() const { return dropout_; }
  double recurrent_dropout_rate() const { return recurrent_dropout_; }

 private:
  static T sigmoid(T v) { return T(1) / (T(1) + std::exp(-v)); }

  Tensor<T> make_mask(std::vector<std::size_t> shape, double rate,
                      bool training, Rng& rng) {
    Tensor<T> mask(std::move(shape));
    if (!training || rate == 0.0) {
      mask.fill(T(1));
      return mask;
    }
    std::bernoulli_distribution keep(1.0 - rate);
    const T scale = static_cast<T>(1.0 / (1.0 - rate));
    for (T& v : mask.data) v = keep(rng) ? scale : T(0);
    return mask;
  }

  Tensor<T> w_, u_, b_, gw_, gu_, gb_;
  std::size_t units_;
  double dropout_, recurrent_dropout_;

  Tensor<T> xm_, hm_, in_mask_, rec_mask_;
  Tensor<T> gate_i_, gate_f_, gate_g_, gate_o_, cell_, tanh_cell_;
  std::size_t seq_len_ = 0;
};

// ---------------------------------------------------------------------------
// Global max pooling over the time axis: (B, L, d) -> (B, d).
// Gradient flows only to the argmax position; ties keep the first index.

template <typename T>
class GlobalMaxPool : public Layer<T> {
 public:
  Tensor<T> forward(const Tensor<T>& x, bool, Rng&) override {
    const std::size_t B = x.dim(0), L = x.dim(1), d = x.dim(2);
    in_shape_ = x.shape;
    argmax_.assign(B * d, 0);
    Tensor<T> out({B, d});
    for (std::size_t b = 0; b < B; ++b) {
      for (std::size_t k = 0; k < d; ++k) {
        T best = x.at(b, 0, k);
        std::size_t best_t = 0;
        for (std::size_t t = 1; t < L; ++t) {
          const T v = x.at(b, t, k);
          if (v > best) {
            best = v;
            best_t = t;
          }
        }
        out.at(b, k) = best;
        argmax_[b * d + k] = best_t;
      }
    }
    return out;
  }

  Tensor<T> backward(const Tensor<T>& grad_out) override {
    Tensor<T> gx(in_shape_);
    const std::size_t B = grad_out.dim(0), d = grad_out.dim(1);
    for (std::size_t b = 0; b < B; ++b) {
      for (std::size_t k = 0; k < d; ++k) {
        gx.at(b, argmax_[b * d + k], k) = grad_out.at(b, k);
      }
    }
    return gx;
  }

  std::string_view kind() const override { return "global_max_pool"; }

 private:
  std::vector<std::size_t> in_shape_;
  std::vector<std::size_t> argmax_;
};

// ---------------------------------------------------------------------------
// Inverted dropout; identity in eval mode.

template <typename T>
class Dropout : public Layer<T> {
 public:
  explicit Dropout(double rate) : rate_(rate) {
    if (rate < 0 || rate >= 1) throw UsageError("dropout rate must be in [0, 1)");
  }

  Tensor<T> forward(const Tensor<T>& x, bool training, Rng& rng) override {
    active_ = training && rate_ > 0.0;
    if (!active_) return x;
    mask_ = Tensor<T>(x.shape);
    std::bernoulli_distribution keep(1.0 - rate_);
    const T scale = static_cast<T>(1.0 / (1.0 - rate_));
    Tensor<T> out(x.shape);
    for (std::size_t i = 0; i < x.size(); ++i) {
      const T m = keep(rng) ? scale : T(0);
      mask_.at(i) = m;
      out.at(i) = x.at(i) * m;
    }
    return out;
  }

  Tensor<T> backward(const Tensor<T>& grad_out) override {
    if (!active_) return grad_out;
    Tensor<T> gx(grad_out.shape);
    for (std::size_t i = 0; i < gx.size(); ++i) {
      gx.at(i) = grad_out.at(i) * mask_.at(i);
    }
    return gx;
  }

  std::string_view kind() const override { return "dropout"; }

  double rate() const { return rate_; }

 private:
  double rate_;
  bool active_ = false;
  Tensor<T> mask_;
};

}  // namespace tweetsent::nn

#endif
