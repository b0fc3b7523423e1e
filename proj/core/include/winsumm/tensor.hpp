// Copyright 2026 The winsumm Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace winsumm {

using Shape = std::vector<std::size_t>;

std::string shape_string(const Shape& shape);
std::size_t shape_size(const Shape& shape);

struct TensorNode {
  Shape shape;
  std::vector<double> value;
  std::vector<double> grad;  // allocated on first use
  bool requires_grad = false;

  void ensure_grad() {
    if (grad.size() != value.size()) grad.assign(value.size(), 0.0);
  }
};

/// Shared handle to a dense row-major array of doubles. Rank 0 (scalar),
/// rank 1 (vector) and rank 2 (matrix) are supported by the primitives.
/// Copies alias the same storage; use clone() for a deep copy.
class Tensor {
 public:
  Tensor() = default;

  static Tensor zeros(Shape shape, bool requires_grad = false);
  static Tensor from(Shape shape, std::vector<double> values, bool requires_grad = false);
  static Tensor scalar(double v, bool requires_grad = false);
  static Tensor vector(std::initializer_list<double> values, bool requires_grad = false);

  bool defined() const { return node_ != nullptr; }
  const Shape& shape() const { return node_->shape; }
  std::size_t rank() const { return node_->shape.size(); }
  std::size_t size() const { return node_->value.size(); }
  std::size_t rows() const;
  std::size_t cols() const;

  std::span<double> value() { return node_->value; }
  std::span<const double> value() const { return node_->value; }
  double item() const;
  double operator[](std::size_t i) const { return node_->value[i]; }
  double& operator[](std::size_t i) { return node_->value[i]; }

  /// Gradient buffer; zero-filled if no gradient has reached this tensor.
  std::span<const double> grad() const;
  std::span<double> mutable_grad();
  void zero_grad();

  bool requires_grad() const { return node_->requires_grad; }
  void set_requires_grad(bool on) { node_->requires_grad = on; }

  /// Deep copy of the value; the copy does not track gradients.
  Tensor clone() const;

  TensorNode* node() const { return node_.get(); }
  const std::shared_ptr<TensorNode>& shared() const { return node_; }

 private:
  explicit Tensor(std::shared_ptr<TensorNode> node) : node_(std::move(node)) {}

  std::shared_ptr<TensorNode> node_;
};

/// Records primitive applications and replays their gradient rules in
/// reverse. A tape is used by one thread; a tape supports exactly one
/// backward pass, after which clear() must be called before reuse.
///
/// With recording off (inference) primitives compute values only.
class Tape {
 public:
  explicit Tape(bool record = true) : recording_(record) {}
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  bool recording() const { return recording_; }
  std::size_t num_records() const { return backward_.size(); }
  void clear();

  // [m,k] x [k,n] -> [m,n];  [m,k] x [k] -> [m]
  Tensor matmul(const Tensor& a, const Tensor& b);
  Tensor add(const Tensor& a, const Tensor& b);
  Tensor sub(const Tensor& a, const Tensor& b);
  Tensor mul(const Tensor& a, const Tensor& b);
  Tensor scale(const Tensor& a, double c);
  // Every element of `a` times the scalar tensor `s`.
  Tensor scale(const Tensor& a, const Tensor& s);
  // Rank 0/1 inputs joined into one vector.
  Tensor concat(std::span<const Tensor> parts);
  Tensor concat(std::initializer_list<Tensor> parts) {
    return concat(std::span<const Tensor>(parts.begin(), parts.size()));
  }
  // Equal-length vectors as the rows of a matrix.
  Tensor stack(std::span<const Tensor> rows);
  Tensor row(const Tensor& m, std::size_t i);
  Tensor slice(const Tensor& v, std::size_t offset, std::size_t length);
  Tensor element(const Tensor& v, std::size_t i);
  Tensor reshape(const Tensor& t, Shape shape);
  Tensor transpose(const Tensor& m);
  // Mean over `axis` of a matrix: axis 0 -> [cols], axis 1 -> [rows].
  Tensor mean(const Tensor& m, std::size_t axis);
  // Softmax of a vector, or of each row of a matrix.
  Tensor softmax(const Tensor& t);
  Tensor sigmoid(const Tensor& t);
  Tensor tanh(const Tensor& t);
  Tensor relu(const Tensor& t);
  // Rows of `table` ([V,d]) selected by `ids` -> [ids.size(), d].
  Tensor embedding(const Tensor& table, std::span<const int> ids);
  Tensor dot(const Tensor& a, const Tensor& b);
  Tensor sum(const Tensor& t);

  /// sum_i w_pos*y_i*(-log p_i) + w_neg*(1-y_i)*(-log(1-p_i)) with p clamped
  /// to [clamp, 1-clamp]. Clamped entries pass no gradient.
  Tensor weighted_bce(const Tensor& probs, std::span<const int> labels, double w_pos,
                      double w_neg, double clamp = 1e-7);

  /// Populate gradients of every tracked tensor reachable from `loss`.
  void backward(const Tensor& loss);

 private:
  Tensor make_output(Shape shape, std::initializer_list<const Tensor*> inputs);
  Tensor make_output(Shape shape, std::span<const Tensor> inputs);
  void record(const Tensor& out, std::function<void()> rule);

  std::vector<std::function<void()>> backward_;
  bool recording_;
  bool consumed_ = false;
};

}  // namespace winsumm
