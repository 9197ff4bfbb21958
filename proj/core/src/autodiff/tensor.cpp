#include "stackrl/autodiff/tensor.h"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace stackrl::autodiff {

std::size_t element_count(const Shape& shape) {
  if (shape.empty()) return 0;
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1},
                         std::multiplies<>());
}

std::string shape_string(const Shape& shape) {
  std::string out = "[";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) out += "x";
    out += std::to_string(shape[i]);
  }
  return out + "]";
}

Tensor::Tensor(Shape shape) : shape_(std::move(shape)) {
  if (shape_.empty() || shape_.size() > 2) {
    throw std::invalid_argument("tensor rank must be 1 or 2, got shape " +
                                shape_string(shape_));
  }
  data_.assign(element_count(shape_), 0.0);
}

Tensor::Tensor(Shape shape, std::vector<double> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
  if (shape_.empty() || shape_.size() > 2) {
    throw std::invalid_argument("tensor rank must be 1 or 2, got shape " +
                                shape_string(shape_));
  }
  if (element_count(shape_) != data_.size()) {
    throw std::invalid_argument("tensor shape " + shape_string(shape_) +
                                " does not match " +
                                std::to_string(data_.size()) + " values");
  }
}

Tensor Tensor::scalar(double value) { return Tensor({1}, {value}); }

Tensor Tensor::vector(std::vector<double> values) {
  const std::size_t n = values.size();
  return Tensor({n}, std::move(values));
}

Tensor Tensor::matrix(std::size_t rows, std::size_t cols,
                      std::vector<double> values) {
  return Tensor({rows, cols}, std::move(values));
}

void Tensor::fill(double value) { std::fill(data_.begin(), data_.end(), value); }

bool Tensor::all_finite() const {
  for (double v : data_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

double Tensor::squared_norm() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return s;
}

void NamedTensors::set(std::string name, Tensor value) {
  entries_.insert_or_assign(std::move(name), std::move(value));
}

const Tensor* NamedTensors::find(std::string_view name) const {
  auto it = entries_.find(name);
  return it == entries_.end() ? nullptr : &it->second;
}

Tensor* NamedTensors::find(std::string_view name) {
  auto it = entries_.find(name);
  return it == entries_.end() ? nullptr : &it->second;
}

const Tensor& NamedTensors::at(std::string_view name) const {
  const Tensor* t = find(name);
  if (t == nullptr) {
    throw std::out_of_range("no tensor named '" + std::string(name) + "'");
  }
  return *t;
}

Tensor& NamedTensors::at(std::string_view name) {
  Tensor* t = find(name);
  if (t == nullptr) {
    throw std::out_of_range("no tensor named '" + std::string(name) + "'");
  }
  return *t;
}

void NamedTensors::accumulate(const NamedTensors& other, double scale) {
  for (const auto& [name, src] : other.entries_) {
    auto it = entries_.find(name);
    if (it == entries_.end()) {
      Tensor copy(src.shape());
      auto dst = copy.data();
      auto s = src.data();
      for (std::size_t i = 0; i < s.size(); ++i) dst[i] = scale * s[i];
      entries_.emplace(name, std::move(copy));
      continue;
    }
    if (it->second.shape() != src.shape()) {
      throw std::invalid_argument("cannot accumulate '" + name + "': shape " +
                                  shape_string(src.shape()) + " vs " +
                                  shape_string(it->second.shape()));
    }
    auto dst = it->second.data();
    auto s = src.data();
    for (std::size_t i = 0; i < s.size(); ++i) dst[i] += scale * s[i];
  }
}

void NamedTensors::scale(double factor) {
  for (auto& [name, t] : entries_) {
    for (double& v : t.data()) v *= factor;
  }
}

NamedTensors NamedTensors::zeros_like() const {
  NamedTensors out;
  for (const auto& [name, t] : entries_) out.set(name, Tensor(t.shape()));
  return out;
}

double NamedTensors::global_norm() const {
  double s = 0.0;
  for (const auto& [name, t] : entries_) s += t.squared_norm();
  return std::sqrt(s);
}

bool NamedTensors::all_finite() const {
  for (const auto& [name, t] : entries_) {
    if (!t.all_finite()) return false;
  }
  return true;
}

std::size_t NamedTensors::parameter_count() const {
  std::size_t n = 0;
  for (const auto& [name, t] : entries_) n += t.size();
  return n;
}

}  // namespace stackrl::autodiff
