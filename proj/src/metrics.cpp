#include "tweetsent/metrics.hpp"

#include "tweetsent/common.hpp"

namespace tweetsent {

std::size_t Metrics::total() const {
  std::size_t n = 0;
  for (const auto& row : confusion) {
    for (std::size_t v : row) n += v;
  }
  return n;
}

double f1_of_class(const std::vector<std::vector<std::size_t>>& confusion,
                   std::size_t cls) {
  const std::size_t k = confusion.size();
  std::size_t tp = confusion[cls][cls];
  std::size_t fp = 0, fn = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (i == cls) continue;
    fp += confusion[i][cls];
    fn += confusion[cls][i];
  }
  const double denom = static_cast<double>(2 * tp + fp + fn);
  if (denom == 0.0) return 0.0;
  return 2.0 * static_cast<double>(tp) / denom;
}

Metrics Metrics::from_confusion(
    std::vector<std::vector<std::size_t>> confusion) {
  const std::size_t k = confusion.size();
  for (const auto& row : confusion) {
    if (row.size() != k) throw DataError("confusion matrix must be square");
  }
  Metrics m;
  m.confusion = std::move(confusion);
  std::size_t diag = 0, total = 0;
  for (std::size_t i = 0; i < k; ++i) {
    diag += m.confusion[i][i];
    for (std::size_t j = 0; j < k; ++j) total += m.confusion[i][j];
  }
  m.accuracy = total == 0 ? 0.0
                          : static_cast<double>(diag) / static_cast<double>(total);
  double f1_sum = 0.0;
  for (std::size_t c = 0; c < k; ++c) f1_sum += f1_of_class(m.confusion, c);
  m.f1_macro = k == 0 ? 0.0 : f1_sum / static_cast<double>(k);
  m.f1_positive = k == 2 ? f1_of_class(m.confusion, 1) : m.f1_macro;
  return m;
}

Metrics Metrics::from_pairs(std::span<const std::size_t> actual,
                            std::span<const std::size_t> predicted,
                            std::size_t num_classes) {
  if (actual.size() != predicted.size()) {
    throw DataError("metrics need matching label/prediction counts");
  }
  std::vector<std::vector<std::size_t>> confusion(
      num_classes, std::vector<std::size_t>(num_classes, 0));
  for (std::size_t i = 0; i < actual.size(); ++i) {
    if (actual[i] >= num_classes || predicted[i] >= num_classes) {
      throw DataError("label outside the class set");
    }
    ++confusion[actual[i]][predicted[i]];
  }
  return from_confusion(std::move(confusion));
}

}  // namespace tweetsent
