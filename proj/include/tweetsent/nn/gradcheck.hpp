#ifndef TWEETSENT_NN_GRADCHECK_HPP
#define TWEETSENT_NN_GRADCHECK_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "tweetsent/common.hpp"
#include "tweetsent/nn/network.hpp"

namespace tweetsent::nn {

struct GradCheckReport {
  bool pass = false;
  double max_rel_err = 0.0;
  double epsilon = 0.0;
  double tolerance = 0.0;
  std::size_t checked = 0;
  std::size_t total_parameters = 0;
  std::string worst;  // "param <i> elem <k>"
};

// Central finite differences against the analytic backward pass, in
// 64-bit mode with dropout disabled (eval-mode forward). Checks up to
// `max_samples` randomly chosen parameter scalars (all of them when the
// network is small enough).
inline GradCheckReport gradient_check(Network<double>& net,
                                      const Tensor<double>& x,
                                      const Tensor<double>& y, double epsilon,
                                      double tolerance,
                                      std::size_t max_samples, Rng& rng) {
  GradCheckReport report;
  report.epsilon = epsilon;
  report.tolerance = tolerance;

  Tensor<double> scores = net.forward(x, /*training=*/false);
  net.backward(scores, y);
  auto params = net.parameters();
  auto grads = net.gradients();

  std::size_t total = 0;
  for (auto* p : params) total += p->size();
  report.total_parameters = total;
  if (total == 0) return report;

  // flat index -> (param, element)
  std::vector<std::size_t> flat(total);
  std::iota(flat.begin(), flat.end(), 0);
  if (total > max_samples) {
    std::shuffle(flat.begin(), flat.end(), rng);
    flat.resize(max_samples);
  }

  auto loss_at = [&]() {
    Tensor<double> s = net.forward(x, /*training=*/false);
    return static_cast<double>(net.loss_value(s, y));
  };

  for (std::size_t f : flat) {
    std::size_t pi = 0, ofs = f;
    while (ofs >= params[pi]->size()) {
      ofs -= params[pi]->size();
      ++pi;
    }
    double& value = params[pi]->at(ofs);
    const double saved = value;
    value = saved + epsilon;
    const double lp = loss_at();
    value = saved - epsilon;
    const double lm = loss_at();
    value = saved;

    const double fd = (lp - lm) / (2.0 * epsilon);
    const double analytic = grads[pi]->at(ofs);
    const double denom = std::max({std::abs(fd), std::abs(analytic), 1e-6});
    const double rel = std::abs(fd - analytic) / denom;
    ++report.checked;
    if (rel > report.max_rel_err) {
      report.max_rel_err = rel;
      report.worst = "param " + std::to_string(pi) + " elem " +
                     std::to_string(ofs) + " analytic " +
                     std::to_string(analytic) + " fd " + std::to_string(fd);
    }
  }
  report.pass = report.max_rel_err < tolerance;
  return report;
}

}  // namespace tweetsent::nn

#endif
