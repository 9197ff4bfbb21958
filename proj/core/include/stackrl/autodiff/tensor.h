#ifndef STACKRL_AUTODIFF_TENSOR_H_
#define STACKRL_AUTODIFF_TENSOR_H_

#include <cstddef>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace stackrl::autodiff {

// Rank-1 ({n}) or rank-2 ({rows, cols}) shape. Scalars are {1}.
using Shape = std::vector<std::size_t>;

std::size_t element_count(const Shape& shape);
std::string shape_string(const Shape& shape);

// Dense row-major array of doubles.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(Shape shape);
  Tensor(Shape shape, std::vector<double> data);

  static Tensor scalar(double value);
  static Tensor vector(std::vector<double> values);
  static Tensor matrix(std::size_t rows, std::size_t cols,
                       std::vector<double> values);

  const Shape& shape() const { return shape_; }
  std::size_t rank() const { return shape_.size(); }
  std::size_t size() const { return data_.size(); }
  std::size_t rows() const { return shape_.empty() ? 0 : shape_[0]; }
  std::size_t cols() const { return shape_.size() < 2 ? 1 : shape_[1]; }

  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }
  const std::vector<double>& values() const { return data_; }

  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }
  double& at(std::size_t r, std::size_t c) { return data_[r * cols() + c]; }
  double at(std::size_t r, std::size_t c) const { return data_[r * cols() + c]; }

  void fill(double value);
  bool all_finite() const;
  double squared_norm() const;

  bool operator==(const Tensor&) const = default;

 private:
  Shape shape_;
  std::vector<double> data_;
};

// Named tensors in a deterministic (lexicographic) order. Used both for model
// parameters and for the gradients returned by backward().
class NamedTensors {
 public:
  using Map = std::map<std::string, Tensor, std::less<>>;

  void set(std::string name, Tensor value);
  const Tensor* find(std::string_view name) const;
  Tensor* find(std::string_view name);
  const Tensor& at(std::string_view name) const;
  Tensor& at(std::string_view name);
  bool contains(std::string_view name) const { return find(name) != nullptr; }

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const Map& entries() const { return entries_; }
  Map& entries() { return entries_; }

  // Element-wise this += scale * other. Entries missing here are created.
  void accumulate(const NamedTensors& other, double scale = 1.0);
  void scale(double factor);
  // Same names and shapes, all values zero.
  NamedTensors zeros_like() const;
  double global_norm() const;
  bool all_finite() const;
  std::size_t parameter_count() const;

  bool operator==(const NamedTensors&) const = default;

 private:
  Map entries_;
};

using Gradients = NamedTensors;

}  // namespace stackrl::autodiff

#endif  // STACKRL_AUTODIFF_TENSOR_H_
