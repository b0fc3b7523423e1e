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

#include "winsumm/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "winsumm/error.hpp"

namespace winsumm {

using NodePtr = std::shared_ptr<TensorNode>;

std::string shape_string(const Shape& shape) {
  std::ostringstream ss;
  ss << '[';
  for (std::size_t i = 0; i < shape.size(); ++i) ss << (i ? "," : "") << shape[i];
  ss << ']';
  return ss.str();
}

std::size_t shape_size(const Shape& shape) {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>());
}

namespace {

[[noreturn]] void shape_error(const char* op, const Tensor& a) {
  throw ShapeError(std::string(op) + ": unsupported shape " + shape_string(a.shape()));
}

[[noreturn]] void shape_error(const char* op, const Tensor& a, const Tensor& b) {
  throw ShapeError(std::string(op) + ": incompatible shapes " + shape_string(a.shape()) +
                   " and " + shape_string(b.shape()));
}

void check_defined(const char* op, const Tensor& t) {
  if (!t.defined()) throw UsageError(std::string(op) + ": undefined tensor");
}

}  // namespace

// ---------------------------------------------------------------------------
// Tensor

Tensor Tensor::zeros(Shape shape, bool requires_grad) {
  auto node = std::make_shared<TensorNode>();
  node->value.assign(shape_size(shape), 0.0);
  node->shape = std::move(shape);
  node->requires_grad = requires_grad;
  return Tensor(std::move(node));
}

Tensor Tensor::from(Shape shape, std::vector<double> values, bool requires_grad) {
  if (values.size() != shape_size(shape))
    throw ShapeError("Tensor::from: " + std::to_string(values.size()) +
                     " values for shape " + shape_string(shape));
  auto node = std::make_shared<TensorNode>();
  node->shape = std::move(shape);
  node->value = std::move(values);
  node->requires_grad = requires_grad;
  return Tensor(std::move(node));
}

Tensor Tensor::scalar(double v, bool requires_grad) { return from({}, {v}, requires_grad); }

Tensor Tensor::vector(std::initializer_list<double> values, bool requires_grad) {
  return from({values.size()}, std::vector<double>(values), requires_grad);
}

std::size_t Tensor::rows() const {
  if (rank() != 2) throw ShapeError("rows: expected matrix, got " + shape_string(shape()));
  return shape()[0];
}

std::size_t Tensor::cols() const {
  if (rank() != 2) throw ShapeError("cols: expected matrix, got " + shape_string(shape()));
  return shape()[1];
}

double Tensor::item() const {
  if (size() != 1) throw ShapeError("item: tensor has " + std::to_string(size()) + " elements");
  return node_->value[0];
}

std::span<const double> Tensor::grad() const {
  node_->ensure_grad();
  return node_->grad;
}

std::span<double> Tensor::mutable_grad() {
  node_->ensure_grad();
  return node_->grad;
}

void Tensor::zero_grad() { std::fill(node_->grad.begin(), node_->grad.end(), 0.0); }

Tensor Tensor::clone() const { return from(shape(), node_->value, false); }

// ---------------------------------------------------------------------------
// Tape bookkeeping

void Tape::clear() {
  backward_.clear();
  consumed_ = false;
}

Tensor Tape::make_output(Shape shape, std::initializer_list<const Tensor*> inputs) {
  bool track = false;
  for (const Tensor* t : inputs) track = track || t->requires_grad();
  return Tensor::zeros(std::move(shape), recording_ && track);
}

Tensor Tape::make_output(Shape shape, std::span<const Tensor> inputs) {
  bool track = false;
  for (const Tensor& t : inputs) track = track || t.requires_grad();
  return Tensor::zeros(std::move(shape), recording_ && track);
}

void Tape::record(const Tensor& out, std::function<void()> rule) {
  if (out.requires_grad()) backward_.push_back(std::move(rule));
}

void Tape::backward(const Tensor& loss) {
  check_defined("backward", loss);
  if (consumed_) throw UsageError("backward: tape already consumed; run a new forward pass");
  if (loss.size() != 1) throw ShapeError("backward: loss must be scalar, got " + shape_string(loss.shape()));
  if (!loss.requires_grad()) throw UsageError("backward: loss does not depend on tracked tensors");
  loss.node()->ensure_grad();
  loss.node()->grad[0] += 1.0;
  for (auto it = backward_.rbegin(); it != backward_.rend(); ++it) (*it)();
  backward_.clear();
  consumed_ = true;
}

// ---------------------------------------------------------------------------
// Primitives

Tensor Tape::matmul(const Tensor& a, const Tensor& b) {
  check_defined("matmul", a);
  check_defined("matmul", b);
  if (a.rank() != 2 || (b.rank() != 1 && b.rank() != 2) || a.shape()[1] != b.shape()[0])
    shape_error("matmul", a, b);
  const std::size_t m = a.shape()[0], k = a.shape()[1];
  const std::size_t n = b.rank() == 2 ? b.shape()[1] : 1;
  Tensor out = make_output(b.rank() == 2 ? Shape{m, n} : Shape{m}, {&a, &b});
  const double* A = a.value().data();
  const double* B = b.value().data();
  double* O = out.value().data();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t p = 0; p < k; ++p) {
      const double aip = A[i * k + p];
      for (std::size_t j = 0; j < n; ++j) O[i * n + j] += aip * B[p * n + j];
    }
  record(out, [an = a.shared(), bn = b.shared(), on = out.shared(), m, k, n] {
    if (on->grad.empty()) return;
    const double* dO = on->grad.data();
    if (an->requires_grad) {
      an->ensure_grad();
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t p = 0; p < k; ++p) {
          double s = 0.0;
          for (std::size_t j = 0; j < n; ++j) s += dO[i * n + j] * bn->value[p * n + j];
          an->grad[i * k + p] += s;
        }
    }
    if (bn->requires_grad) {
      bn->ensure_grad();
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t p = 0; p < k; ++p) {
          const double aip = an->value[i * k + p];
          for (std::size_t j = 0; j < n; ++j) bn->grad[p * n + j] += aip * dO[i * n + j];
        }
    }
  });
  return out;
}

namespace {

void accumulate(const NodePtr& dst, const NodePtr& src, double sign = 1.0) {
  if (!dst->requires_grad) return;
  dst->ensure_grad();
  for (std::size_t i = 0; i < src->grad.size(); ++i) dst->grad[i] += sign * src->grad[i];
}

}  // namespace

Tensor Tape::add(const Tensor& a, const Tensor& b) {
  check_defined("add", a);
  check_defined("add", b);
  if (a.shape() != b.shape()) shape_error("add", a, b);
  Tensor out = make_output(a.shape(), {&a, &b});
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  record(out, [an = a.shared(), bn = b.shared(), on = out.shared()] {
    if (on->grad.empty()) return;
    accumulate(an, on);
    accumulate(bn, on);
  });
  return out;
}

Tensor Tape::sub(const Tensor& a, const Tensor& b) {
  check_defined("sub", a);
  check_defined("sub", b);
  if (a.shape() != b.shape()) shape_error("sub", a, b);
  Tensor out = make_output(a.shape(), {&a, &b});
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  record(out, [an = a.shared(), bn = b.shared(), on = out.shared()] {
    if (on->grad.empty()) return;
    accumulate(an, on);
    accumulate(bn, on, -1.0);
  });
  return out;
}

Tensor Tape::mul(const Tensor& a, const Tensor& b) {
  check_defined("mul", a);
  check_defined("mul", b);
  if (a.shape() != b.shape()) shape_error("mul", a, b);
  Tensor out = make_output(a.shape(), {&a, &b});
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  record(out, [an = a.shared(), bn = b.shared(), on = out.shared()] {
    if (on->grad.empty()) return;
    if (an->requires_grad) {
      an->ensure_grad();
      for (std::size_t i = 0; i < on->grad.size(); ++i) an->grad[i] += on->grad[i] * bn->value[i];
    }
    if (bn->requires_grad) {
      bn->ensure_grad();
      for (std::size_t i = 0; i < on->grad.size(); ++i) bn->grad[i] += on->grad[i] * an->value[i];
    }
  });
  return out;
}

Tensor Tape::scale(const Tensor& a, double c) {
  check_defined("scale", a);
  Tensor out = make_output(a.shape(), {&a});
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = c * a[i];
  record(out, [an = a.shared(), on = out.shared(), c] {
    if (on->grad.empty()) return;
    accumulate(an, on, c);
  });
  return out;
}

Tensor Tape::scale(const Tensor& a, const Tensor& s) {
  check_defined("scale", a);
  check_defined("scale", s);
  if (s.size() != 1) shape_error("scale", a, s);
  Tensor out = make_output(a.shape(), {&a, &s});
  const double c = s[0];
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = c * a[i];
  record(out, [an = a.shared(), sn = s.shared(), on = out.shared()] {
    if (on->grad.empty()) return;
    const double c = sn->value[0];
    if (an->requires_grad) {
      an->ensure_grad();
      for (std::size_t i = 0; i < on->grad.size(); ++i) an->grad[i] += c * on->grad[i];
    }
    if (sn->requires_grad) {
      sn->ensure_grad();
      double g = 0.0;
      for (std::size_t i = 0; i < on->grad.size(); ++i) g += on->grad[i] * an->value[i];
      sn->grad[0] += g;
    }
  });
  return out;
}

Tensor Tape::concat(std::span<const Tensor> parts) {
  std::size_t total = 0;
  for (const auto& p : parts) {
    check_defined("concat", p);
    if (p.rank() > 1) shape_error("concat", p);
    total += p.size();
  }
  Tensor out = make_output({total}, parts);
  std::vector<NodePtr> nodes;
  nodes.reserve(parts.size());
  std::size_t off = 0;
  for (const auto& p : parts) {
    std::copy(p.value().begin(), p.value().end(), out.value().begin() + static_cast<std::ptrdiff_t>(off));
    off += p.size();
    nodes.push_back(p.shared());
  }
  record(out, [nodes = std::move(nodes), on = out.shared()] {
    if (on->grad.empty()) return;
    std::size_t off = 0;
    for (const auto& n : nodes) {
      if (n->requires_grad) {
        n->ensure_grad();
        for (std::size_t i = 0; i < n->value.size(); ++i) n->grad[i] += on->grad[off + i];
      }
      off += n->value.size();
    }
  });
  return out;
}

Tensor Tape::stack(std::span<const Tensor> rows) {
  if (rows.empty()) throw ShapeError("stack: no rows");
  const std::size_t width = rows.front().size();
  for (const auto& r : rows) {
    check_defined("stack", r);
    if (r.rank() != 1 || r.size() != width) shape_error("stack", rows.front(), r);
  }
  Tensor out = make_output({rows.size(), width}, rows);
  std::vector<NodePtr> nodes;
  nodes.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::copy(rows[i].value().begin(), rows[i].value().end(),
              out.value().begin() + static_cast<std::ptrdiff_t>(i * width));
    nodes.push_back(rows[i].shared());
  }
  record(out, [nodes = std::move(nodes), on = out.shared(), width] {
    if (on->grad.empty()) return;
    for (std::size_t r = 0; r < nodes.size(); ++r) {
      const auto& n = nodes[r];
      if (!n->requires_grad) continue;
      n->ensure_grad();
      for (std::size_t i = 0; i < width; ++i) n->grad[i] += on->grad[r * width + i];
    }
  });
  return out;
}

Tensor Tape::row(const Tensor& m, std::size_t i) {
  check_defined("row", m);
  if (m.rank() != 2 || i >= m.shape()[0]) shape_error("row", m);
  const std::size_t width = m.shape()[1];
  Tensor out = make_output({width}, {&m});
  std::copy_n(m.value().begin() + static_cast<std::ptrdiff_t>(i * width), width, out.value().begin());
  record(out, [mn = m.shared(), on = out.shared(), i, width] {
    if (on->grad.empty()) return;
    mn->ensure_grad();
    for (std::size_t j = 0; j < width; ++j) mn->grad[i * width + j] += on->grad[j];
  });
  return out;
}

Tensor Tape::slice(const Tensor& v, std::size_t offset, std::size_t length) {
  check_defined("slice", v);
  if (v.rank() != 1 || offset + length > v.size()) shape_error("slice", v);
  Tensor out = make_output({length}, {&v});
  std::copy_n(v.value().begin() + static_cast<std::ptrdiff_t>(offset), length, out.value().begin());
  record(out, [vn = v.shared(), on = out.shared(), offset, length] {
    if (on->grad.empty()) return;
    vn->ensure_grad();
    for (std::size_t j = 0; j < length; ++j) vn->grad[offset + j] += on->grad[j];
  });
  return out;
}

Tensor Tape::element(const Tensor& v, std::size_t i) {
  check_defined("element", v);
  if (i >= v.size()) shape_error("element", v);
  Tensor out = make_output({}, {&v});
  out[0] = v[i];
  record(out, [vn = v.shared(), on = out.shared(), i] {
    if (on->grad.empty()) return;
    vn->ensure_grad();
    vn->grad[i] += on->grad[0];
  });
  return out;
}

Tensor Tape::reshape(const Tensor& t, Shape shape) {
  check_defined("reshape", t);
  if (shape_size(shape) != t.size())
    throw ShapeError("reshape: cannot view " + shape_string(t.shape()) + " as " + shape_string(shape));
  Tensor out = make_output(std::move(shape), {&t});
  std::copy(t.value().begin(), t.value().end(), out.value().begin());
  record(out, [tn = t.shared(), on = out.shared()] {
    if (on->grad.empty()) return;
    accumulate(tn, on);
  });
  return out;
}

Tensor Tape::transpose(const Tensor& m) {
  check_defined("transpose", m);
  if (m.rank() != 2) shape_error("transpose", m);
  const std::size_t r = m.shape()[0], c = m.shape()[1];
  Tensor out = make_output({c, r}, {&m});
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) out[j * r + i] = m[i * c + j];
  record(out, [mn = m.shared(), on = out.shared(), r, c] {
    if (on->grad.empty()) return;
    mn->ensure_grad();
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) mn->grad[i * c + j] += on->grad[j * r + i];
  });
  return out;
}

Tensor Tape::mean(const Tensor& m, std::size_t axis) {
  check_defined("mean", m);
  if (m.rank() != 2 || axis > 1) shape_error("mean", m);
  const std::size_t r = m.shape()[0], c = m.shape()[1];
  if ((axis == 0 && r == 0) || (axis == 1 && c == 0)) shape_error("mean", m);
  Tensor out = make_output({axis == 0 ? c : r}, {&m});
  const double inv = 1.0 / static_cast<double>(axis == 0 ? r : c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) out[axis == 0 ? j : i] += m[i * c + j] * inv;
  record(out, [mn = m.shared(), on = out.shared(), r, c, axis, inv] {
    if (on->grad.empty()) return;
    mn->ensure_grad();
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) mn->grad[i * c + j] += on->grad[axis == 0 ? j : i] * inv;
  });
  return out;
}

Tensor Tape::softmax(const Tensor& t) {
  check_defined("softmax", t);
  if (t.rank() != 1 && t.rank() != 2) shape_error("softmax", t);
  const std::size_t width = t.rank() == 1 ? t.size() : t.shape()[1];
  const std::size_t nrows = width == 0 ? 0 : t.size() / width;
  if (width == 0) shape_error("softmax", t);
  Tensor out = make_output(t.shape(), {&t});
  for (std::size_t r = 0; r < nrows; ++r) {
    const double* x = t.value().data() + r * width;
    double* y = out.value().data() + r * width;
    const double mx = *std::max_element(x, x + width);
    double z = 0.0;
    for (std::size_t j = 0; j < width; ++j) z += (y[j] = std::exp(x[j] - mx));
    for (std::size_t j = 0; j < width; ++j) y[j] /= z;
  }
  record(out, [tn = t.shared(), on = out.shared(), width, nrows] {
    if (on->grad.empty()) return;
    tn->ensure_grad();
    for (std::size_t r = 0; r < nrows; ++r) {
      const double* y = on->value.data() + r * width;
      const double* dy = on->grad.data() + r * width;
      double inner = 0.0;
      for (std::size_t j = 0; j < width; ++j) inner += y[j] * dy[j];
      for (std::size_t j = 0; j < width; ++j) tn->grad[r * width + j] += y[j] * (dy[j] - inner);
    }
  });
  return out;
}

namespace {

double sigmoid_fn(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

Tensor Tape::sigmoid(const Tensor& t) {
  check_defined("sigmoid", t);
  Tensor out = make_output(t.shape(), {&t});
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = sigmoid_fn(t[i]);
  record(out, [tn = t.shared(), on = out.shared()] {
    if (on->grad.empty()) return;
    tn->ensure_grad();
    for (std::size_t i = 0; i < on->value.size(); ++i) {
      const double y = on->value[i];
      tn->grad[i] += on->grad[i] * y * (1.0 - y);
    }
  });
  return out;
}

Tensor Tape::tanh(const Tensor& t) {
  check_defined("tanh", t);
  Tensor out = make_output(t.shape(), {&t});
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = std::tanh(t[i]);
  record(out, [tn = t.shared(), on = out.shared()] {
    if (on->grad.empty()) return;
    tn->ensure_grad();
    for (std::size_t i = 0; i < on->value.size(); ++i) {
      const double y = on->value[i];
      tn->grad[i] += on->grad[i] * (1.0 - y * y);
    }
  });
  return out;
}

Tensor Tape::relu(const Tensor& t) {
  check_defined("relu", t);
  Tensor out = make_output(t.shape(), {&t});
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = t[i] > 0.0 ? t[i] : 0.0;
  record(out, [tn = t.shared(), on = out.shared()] {
    if (on->grad.empty()) return;
    tn->ensure_grad();
    for (std::size_t i = 0; i < on->value.size(); ++i)
      if (tn->value[i] > 0.0) tn->grad[i] += on->grad[i];
  });
  return out;
}

Tensor Tape::embedding(const Tensor& table, std::span<const int> ids) {
  check_defined("embedding", table);
  if (table.rank() != 2) shape_error("embedding", table);
  const std::size_t vocab = table.shape()[0], dim = table.shape()[1];
  for (int id : ids)
    if (id < 0 || static_cast<std::size_t>(id) >= vocab)
      throw ShapeError("embedding: id " + std::to_string(id) + " out of range for table " +
                       shape_string(table.shape()));
  Tensor out = make_output({ids.size(), dim}, {&table});
  for (std::size_t r = 0; r < ids.size(); ++r)
    std::copy_n(table.value().begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(ids[r]) * dim),
                dim, out.value().begin() + static_cast<std::ptrdiff_t>(r * dim));
  record(out, [tn = table.shared(), on = out.shared(), rows = std::vector<int>(ids.begin(), ids.end()), dim] {
    if (on->grad.empty()) return;
    tn->ensure_grad();
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t j = 0; j < dim; ++j)
        tn->grad[static_cast<std::size_t>(rows[r]) * dim + j] += on->grad[r * dim + j];
  });
  return out;
}

Tensor Tape::dot(const Tensor& a, const Tensor& b) {
  check_defined("dot", a);
  check_defined("dot", b);
  if (a.rank() != 1 || a.shape() != b.shape()) shape_error("dot", a, b);
  Tensor out = make_output({}, {&a, &b});
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  out[0] = s;
  record(out, [an = a.shared(), bn = b.shared(), on = out.shared()] {
    if (on->grad.empty()) return;
    const double g = on->grad[0];
    if (an->requires_grad) {
      an->ensure_grad();
      for (std::size_t i = 0; i < an->value.size(); ++i) an->grad[i] += g * bn->value[i];
    }
    if (bn->requires_grad) {
      bn->ensure_grad();
      for (std::size_t i = 0; i < bn->value.size(); ++i) bn->grad[i] += g * an->value[i];
    }
  });
  return out;
}

Tensor Tape::sum(const Tensor& t) {
  check_defined("sum", t);
  Tensor out = make_output({}, {&t});
  out[0] = std::accumulate(t.value().begin(), t.value().end(), 0.0);
  record(out, [tn = t.shared(), on = out.shared()] {
    if (on->grad.empty()) return;
    tn->ensure_grad();
    for (auto& g : tn->grad) g += on->grad[0];
  });
  return out;
}

Tensor Tape::weighted_bce(const Tensor& probs, std::span<const int> labels, double w_pos,
                          double w_neg, double clamp) {
  check_defined("weighted_bce", probs);
  if (probs.rank() > 1 || probs.size() != labels.size())
    throw ShapeError("weighted_bce: " + std::to_string(probs.size()) + " probabilities for " +
                     std::to_string(labels.size()) + " labels");
  Tensor out = make_output({}, {&probs});
  double loss = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const double p = std::clamp(probs[i], clamp, 1.0 - clamp);
    loss += labels[i] ? -w_pos * std::log(p) : -w_neg * std::log(1.0 - p);
  }
  out[0] = loss;
  record(out, [pn = probs.shared(), on = out.shared(), y = std::vector<int>(labels.begin(), labels.end()),
                w_pos, w_neg, clamp] {
    if (on->grad.empty()) return;
    pn->ensure_grad();
    const double g = on->grad[0];
    for (std::size_t i = 0; i < y.size(); ++i) {
      const double p = pn->value[i];
      if (p < clamp || p > 1.0 - clamp) continue;
      pn->grad[i] += g * (y[i] ? -w_pos / p : w_neg / (1.0 - p));
    }
  });
  return out;
}

}  // namespace winsumm
