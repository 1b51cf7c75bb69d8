#ifndef TWEETSENT_NN_TRAIN_HPP
#define TWEETSENT_NN_TRAIN_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "tweetsent/common.hpp"
#include "tweetsent/nn/adam.hpp"
#include "tweetsent/nn/network.hpp"

namespace tweetsent::nn {

struct EpochMetrics {
  double mean_loss = 0.0;
  double accuracy = 0.0;
};

namespace detail {

template <typename T>
void gather_batch(const Tensor<T>& x, const Tensor<T>& y,
                  const std::vector<std::size_t>& order, std::size_t begin,
                  std::size_t end, Tensor<T>& xb, Tensor<T>& yb) {
  const std::size_t B = end - begin;
  const std::size_t L = x.dim(1), K = y.dim(1);
  xb = Tensor<T>({B, L});
  yb = Tensor<T>({B, K});
  for (std::size_t i = 0; i < B; ++i) {
    const std::size_t src = order[begin + i];
    std::copy(x.data.begin() + src * L, x.data.begin() + (src + 1) * L,
              xb.data.begin() + i * L);
    std::copy(y.data.begin() + src * K, y.data.begin() + (src + 1) * K,
              yb.data.begin() + i * K);
  }
}

}  // namespace detail

// One pass over (X, Y): seeded shuffle, minibatches, Adam updates in
// place. Aborts with diagnostics on a non-finite loss.
template <typename T>
EpochMetrics train_epoch(Network<T>& net, const Tensor<T>& x,
                         const Tensor<T>& y, std::size_t batch_size,
                         Adam<T>& optimizer, Rng& shuffle_rng) {
  const std::size_t n = x.dim(0);
  if (n == 0 || y.dim(0) != n) throw DataError("empty or misaligned dataset");
  if (batch_size == 0) throw UsageError("batch size must be >= 1");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), shuffle_rng);

  double loss_sum = 0.0;
  std::size_t correct = 0;
  Tensor<T> xb, yb;
  for (std::size_t begin = 0; begin < n; begin += batch_size) {
    const std::size_t end = std::min(begin + batch_size, n);
    detail::gather_batch(x, y, order, begin, end, xb, yb);
    Tensor<T> scores = net.forward(xb, /*training=*/true);
    const T loss = net.loss_value(scores, yb);
    if (!std::isfinite(static_cast<double>(loss))) {
      std::ostringstream msg;
      msg << "non-finite loss at batch starting " << begin << " (batch size "
          << end - begin << ", step " << optimizer.step_count() << ")";
      throw NumericError(msg.str());
    }
    loss_sum += static_cast<double>(loss) * static_cast<double>(end - begin);
    auto pred = argmax_rows(scores);
    auto truth = argmax_rows(yb);
    for (std::size_t i = 0; i < pred.size(); ++i) {
      if (pred[i] == truth[i]) ++correct;
    }
    net.backward(scores, yb);
    optimizer.step(net.parameters(), net.gradients());
  }
  EpochMetrics m;
  m.mean_loss = loss_sum / static_cast<double>(n);
  m.accuracy = static_cast<double>(correct) / static_cast<double>(n);
  return m;
}

// Eval-mode pass; no parameter updates.
template <typename T>
EpochMetrics evaluate_epoch(Network<T>& net, const Tensor<T>& x,
                            const Tensor<T>& y, std::size_t batch_size) {
  const std::size_t n = x.dim(0);
  if (n == 0) return {};
  double loss_sum = 0.0;
  std::size_t correct = 0;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Tensor<T> xb, yb;
  for (std::size_t begin = 0; begin < n; begin += batch_size) {
    const std::size_t end = std::min(begin + batch_size, n);
    detail::gather_batch(x, y, order, begin, end, xb, yb);
    Tensor<T> scores = net.forward(xb, /*training=*/false);
    loss_sum += static_cast<double>(net.loss_value(scores, yb)) *
                static_cast<double>(end - begin);
    auto pred = argmax_rows(scores);
    auto truth = argmax_rows(yb);
    for (std::size_t i = 0; i < pred.size(); ++i) {
      if (pred[i] == truth[i]) ++correct;
    }
  }
  EpochMetrics m;
  m.mean_loss = loss_sum / static_cast<double>(n);
  m.accuracy = static_cast<double>(correct) / static_cast<double>(n);
  return m;
}

}  // namespace tweetsent::nn

#endif
