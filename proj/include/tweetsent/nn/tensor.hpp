#ifndef TWEETSENT_NN_TENSOR_HPP
#define TWEETSENT_NN_TENSOR_HPP

#include <cassert>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

namespace tweetsent::nn {

// Dense row-major tensor. float for training, double for gradient checks.
template <typename T>
struct Tensor {
  std::vector<std::size_t> shape;
  std::vector<T> data;

  Tensor() = default;
  explicit Tensor(std::vector<std::size_t> s)
      : shape(std::move(s)), data(count(shape), T(0)) {}

  static std::size_t count(const std::vector<std::size_t>& s) {
    std::size_t n = 1;
    for (std::size_t d : s) n *= d;
    return s.empty() ? 0 : n;
  }

  static Tensor zeros(std::vector<std::size_t> s) { return Tensor(std::move(s)); }

  std::size_t size() const { return data.size(); }
  std::size_t rank() const { return shape.size(); }
  std::size_t dim(std::size_t i) const { return shape[i]; }

  T& at(std::size_t i) { return data[i]; }
  T at(std::size_t i) const { return data[i]; }
  T& at(std::size_t i, std::size_t j) {
    assert(rank() == 2);
    return data[i * shape[1] + j];
  }
  T at(std::size_t i, std::size_t j) const {
    assert(rank() == 2);
    return data[i * shape[1] + j];
  }
  T& at(std::size_t i, std::size_t j, std::size_t k) {
    assert(rank() == 3);
    return data[(i * shape[1] + j) * shape[2] + k];
  }
  T at(std::size_t i, std::size_t j, std::size_t k) const {
    assert(rank() == 3);
    return data[(i * shape[1] + j) * shape[2] + k];
  }

  void fill(T v) { std::fill(data.begin(), data.end(), v); }

  bool same_shape(const Tensor& other) const { return shape == other.shape; }

  bool all_finite() const {
    for (T v : data) {
      if (!std::isfinite(static_cast<double>(v))) return false;
    }
    return true;
  }

  template <typename U>
  Tensor<U> cast() const {
    Tensor<U> out;
    out.shape = shape;
    out.data.resize(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
      out.data[i] = static_cast<U>(data[i]);
    }
    return out;
  }
};

}  // namespace tweetsent::nn

#endif
