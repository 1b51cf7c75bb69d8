#ifndef TWEETSENT_METRICS_HPP
#define TWEETSENT_METRICS_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace tweetsent {

// Single-pass confusion-matrix metrics. Rows are actual classes, columns
// predicted. For two classes f1_positive is the F1 of class index 1;
// f1_macro is the unweighted mean of per-class F1 (classes with no
// support and no predictions contribute 0).
struct Metrics {
  std::vector<std::vector<std::size_t>> confusion;
  double accuracy = 0.0;
  double f1_positive = 0.0;  // meaningful for 2-class tasks
  double f1_macro = 0.0;

  std::size_t total() const;

  static Metrics from_confusion(std::vector<std::vector<std::size_t>> confusion);
  static Metrics from_pairs(std::span<const std::size_t> actual,
                            std::span<const std::size_t> predicted,
                            std::size_t num_classes);
};

double f1_of_class(const std::vector<std::vector<std::size_t>>& confusion,
                   std::size_t cls);

}  // namespace tweetsent

#endif
