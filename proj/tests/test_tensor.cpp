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

#include <gtest/gtest.h>

#include <cmath>

#include "winsumm/error.hpp"
#include "winsumm/optim.hpp"
#include "winsumm/random.hpp"
#include "winsumm/tensor.hpp"

namespace winsumm {
namespace {

Tensor random_tensor(Rng& rng, Shape shape, double lo = -1.0, double hi = 1.0) {
  std::vector<double> v(shape_size(shape));
  for (double& x : v) x = rng.uniform(lo, hi);
  return Tensor::from(std::move(shape), std::move(v), true);
}

// Reduce an arbitrary output to a scalar with fixed random weights so every
// output coordinate gets a distinct upstream gradient.
Tensor reduce(Tape& tape, const Tensor& out, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> w(out.size());
  for (double& x : w) x = rng.uniform(-1.0, 1.0);
  const Tensor weights = Tensor::from(out.shape(), std::move(w));
  return tape.sum(tape.mul(out, weights));
}

double check(const std::vector<Tensor>& inputs, const std::function<Tensor(Tape&)>& f) {
  std::vector<NamedParameter> params;
  for (std::size_t i = 0; i < inputs.size(); ++i) params.push_back({"in" + std::to_string(i), inputs[i]});
  GradCheckOptions opts;
  opts.samples_per_tensor = 1000;
  return grad_check(f, params, opts).max_rel_error;
}

TEST(Tensor, Factories) {
  const Tensor z = Tensor::zeros({2, 3});
  EXPECT_EQ(z.size(), 6u);
  EXPECT_EQ(z.rows(), 2u);
  EXPECT_EQ(z.cols(), 3u);
  EXPECT_EQ(Tensor::scalar(4.0).item(), 4.0);
  EXPECT_THROW(Tensor::from({2, 2}, {1.0, 2.0}), ShapeError);
  EXPECT_THROW(Tensor::vector({1.0, 2.0}).item(), ShapeError);
  EXPECT_EQ(shape_string({2, 3}), "[2,3]");
}

TEST(Primitives, ReluAndSoftmaxValues) {
  Tape tape(false);
  const Tensor r = tape.relu(Tensor::vector({-1.0, 2.0, 0.0}));
  EXPECT_EQ(r[0], 0.0);
  EXPECT_EQ(r[1], 2.0);
  EXPECT_EQ(r[2], 0.0);
  const Tensor s = tape.softmax(Tensor::vector({0.0, 0.0}));
  EXPECT_EQ(s[0], 0.5);
  EXPECT_EQ(s[1], 0.5);
}

TEST(Primitives, SoftmaxRowsSumToOne) {
  Rng rng(1);
  Tape tape(false);
  const Tensor m = random_tensor(rng, {4, 7}, -30.0, 30.0);
  const Tensor s = tape.softmax(m);
  for (std::size_t r = 0; r < 4; ++r) {
    double total = 0.0;
    for (std::size_t c = 0; c < 7; ++c) {
      EXPECT_GT(s[r * 7 + c], 0.0);
      total += s[r * 7 + c];
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(Primitives, MatmulHandExample) {
  Tape tape(false);
  const Tensor a = Tensor::from({2, 3}, {1, 2, 3, 4, 5, 6});
  const Tensor b = Tensor::from({3, 4}, {1, 0, 2, -1, 0, 1, 1, 2, 3, -2, 0, 1});
  const Tensor c = tape.matmul(a, b);
  ASSERT_EQ(c.shape(), (Shape{2, 4}));
  const std::vector<double> want = {10, -4, 4, 6, 22, -7, 13, 12};
  for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(c[i], want[i]);
  const Tensor v = tape.matmul(a, Tensor::vector({1, 1, 1}));
  EXPECT_EQ(v.shape(), (Shape{2}));
  EXPECT_EQ(v[0], 6.0);
  EXPECT_EQ(v[1], 15.0);
}

TEST(Primitives, ShapeErrorsNameTheOperation) {
  Tape tape;
  const Tensor a = Tensor::zeros({2, 3});
  try {
    tape.matmul(a, Tensor::zeros({2, 3}));
    FAIL();
  } catch (const ShapeError& e) {
    EXPECT_NE(std::string(e.what()).find("matmul"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("[2,3]"), std::string::npos);
  }
  EXPECT_THROW(tape.add(a, Tensor::zeros({3, 2})), ShapeError);
  EXPECT_THROW(tape.embedding(Tensor::zeros({3, 2}), std::vector<int>{5}), ShapeError);
}

TEST(Primitives, ElementaryValues) {
  Tape tape(false);
  const Tensor a = Tensor::vector({1, 2, 3});
  const Tensor b = Tensor::vector({4, 5, 6});
  EXPECT_EQ(tape.dot(a, b).item(), 32.0);
  EXPECT_EQ(tape.sum(a).item(), 6.0);
  EXPECT_EQ(tape.sub(b, a)[2], 3.0);
  EXPECT_EQ(tape.scale(a, 2.0)[1], 4.0);
  EXPECT_EQ(tape.scale(a, Tensor::scalar(3.0))[2], 9.0);
  EXPECT_EQ(tape.concat({a, Tensor::scalar(7.0)}).size(), 4u);
  const Tensor m = Tensor::from({2, 3}, {1, 2, 3, 4, 5, 6});
  EXPECT_EQ(tape.mean(m, 0)[1], 3.5);
  EXPECT_EQ(tape.mean(m, 1)[1], 5.0);
  EXPECT_EQ(tape.transpose(m)[1], 4.0);
  EXPECT_EQ(tape.row(m, 1)[0], 4.0);
  EXPECT_EQ(tape.slice(a, 1, 2)[0], 2.0);
  EXPECT_EQ(tape.element(a, 2).item(), 3.0);
  EXPECT_EQ(tape.sigmoid(Tensor::scalar(0.0)).item(), 0.5);
  EXPECT_EQ(tape.tanh(Tensor::scalar(0.0)).item(), 0.0);
  const std::vector<int> ids = {1, 1, 0};
  const Tensor e = tape.embedding(m, ids);
  EXPECT_EQ(e.shape(), (Shape{3, 3}));
  EXPECT_EQ(e[3], 4.0);
  EXPECT_EQ(e[6], 1.0);
}

TEST(Backward, SumGivesOnes) {
  Tensor w = Tensor::from({2, 2}, {1, 2, 3, 4}, true);
  Tape tape;
  tape.backward(tape.sum(w));
  for (double g : w.grad()) EXPECT_EQ(g, 1.0);
}

TEST(Backward, SigmoidDotClosedForm) {
  Tensor w = Tensor::vector({0.3, -0.7, 0.2}, true);
  const Tensor x = Tensor::vector({1.5, 0.5, -2.0});
  Tape tape;
  const Tensor y = tape.sigmoid(tape.dot(w, x));
  tape.backward(y);
  const double z = 0.3 * 1.5 - 0.7 * 0.5 - 0.2 * 2.0;
  const double s = 1.0 / (1.0 + std::exp(-z));
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(w.grad()[i], s * (1 - s) * x[i], 1e-15);
}

TEST(Backward, TwiceIsAnError) {
  Tensor w = Tensor::vector({1.0}, true);
  Tape tape;
  const Tensor loss = tape.sum(w);
  tape.backward(loss);
  EXPECT_THROW(tape.backward(loss), UsageError);
}

TEST(Backward, AccumulatesAcrossUses) {
  Tensor w = Tensor::vector({2.0}, true);
  Tape tape;
  tape.backward(tape.sum(tape.mul(w, w)));
  EXPECT_EQ(w.grad()[0], 4.0);
}

TEST(Backward, NonRecordingTapeBuildsNoGraph) {
  Tensor w = Tensor::vector({2.0}, true);
  Tape tape(false);
  tape.sum(tape.mul(w, w));
  EXPECT_EQ(tape.num_records(), 0u);
}

class PrimitiveGradients : public ::testing::Test {
 protected:
  Rng rng{42};
};

TEST_F(PrimitiveGradients, Matmul) {
  const Tensor a = random_tensor(rng, {3, 4});
  const Tensor b = random_tensor(rng, {4, 2});
  const Tensor v = random_tensor(rng, {4});
  EXPECT_LT(check({a, b}, [&](Tape& t) { return reduce(t, t.matmul(a, b), 1); }), 1e-6);
  EXPECT_LT(check({a, v}, [&](Tape& t) { return reduce(t, t.matmul(a, v), 2); }), 1e-6);
}

TEST_F(PrimitiveGradients, Elementwise) {
  const Tensor a = random_tensor(rng, {2, 3});
  const Tensor b = random_tensor(rng, {2, 3});
  const Tensor s = random_tensor(rng, {1});
  EXPECT_LT(check({a, b}, [&](Tape& t) { return reduce(t, t.add(a, b), 3); }), 1e-6);
  EXPECT_LT(check({a, b}, [&](Tape& t) { return reduce(t, t.sub(a, b), 4); }), 1e-6);
  EXPECT_LT(check({a, b}, [&](Tape& t) { return reduce(t, t.mul(a, b), 5); }), 1e-6);
  EXPECT_LT(check({a}, [&](Tape& t) { return reduce(t, t.scale(a, -1.7), 6); }), 1e-6);
  EXPECT_LT(check({a, s}, [&](Tape& t) { return reduce(t, t.scale(a, t.reshape(s, {})), 7); }), 1e-6);
}

TEST_F(PrimitiveGradients, Nonlinearities) {
  const Tensor a = random_tensor(rng, {3, 3}, -2.0, 2.0);
  EXPECT_LT(check({a}, [&](Tape& t) { return reduce(t, t.sigmoid(a), 8); }), 1e-6);
  EXPECT_LT(check({a}, [&](Tape& t) { return reduce(t, t.tanh(a), 9); }), 1e-6);
  EXPECT_LT(check({a}, [&](Tape& t) { return reduce(t, t.softmax(a), 10); }), 1e-6);
  const Tensor v = random_tensor(rng, {5}, -2.0, 2.0);
  EXPECT_LT(check({v}, [&](Tape& t) { return reduce(t, t.softmax(v), 11); }), 1e-6);
  // Nudge relu inputs away from the kink at 0.
  Tensor r = random_tensor(rng, {6});
  for (double& x : r.value())
    if (std::abs(x) < 1e-3) x = 0.5;
  EXPECT_LT(check({r}, [&](Tape& t) { return reduce(t, t.relu(r), 12); }), 1e-6);
}

TEST_F(PrimitiveGradients, Structural) {
  const Tensor a = random_tensor(rng, {4});
  const Tensor b = random_tensor(rng, {3});
  const Tensor m = random_tensor(rng, {3, 4});
  EXPECT_LT(check({a, b}, [&](Tape& t) { return reduce(t, t.concat({a, b}), 13); }), 1e-6);
  EXPECT_LT(check({a}, [&](Tape& t) {
              const std::vector<Tensor> rows = {a, t.scale(a, 2.0)};
              return reduce(t, t.stack(rows), 14);
            }), 1e-6);
  EXPECT_LT(check({m}, [&](Tape& t) { return reduce(t, t.row(m, 1), 15); }), 1e-6);
  EXPECT_LT(check({a}, [&](Tape& t) { return reduce(t, t.slice(a, 1, 2), 16); }), 1e-6);
  EXPECT_LT(check({a}, [&](Tape& t) { return t.element(a, 3); }), 1e-6);
  EXPECT_LT(check({m}, [&](Tape& t) { return reduce(t, t.reshape(m, {12}), 17); }), 1e-6);
  EXPECT_LT(check({m}, [&](Tape& t) { return reduce(t, t.transpose(m), 18); }), 1e-6);
  EXPECT_LT(check({m}, [&](Tape& t) { return reduce(t, t.mean(m, 0), 19); }), 1e-6);
  EXPECT_LT(check({m}, [&](Tape& t) { return reduce(t, t.mean(m, 1), 20); }), 1e-6);
  EXPECT_LT(check({a, b}, [&](Tape& t) { return t.dot(t.slice(a, 0, 3), b); }), 1e-6);
  const std::vector<int> ids = {2, 0, 2};
  EXPECT_LT(check({m}, [&](Tape& t) { return reduce(t, t.embedding(m, ids), 21); }), 1e-6);
}

TEST_F(PrimitiveGradients, WeightedBce) {
  const Tensor z = random_tensor(rng, {5}, -2.0, 2.0);
  const std::vector<int> labels = {1, 0, 0, 1, 0};
  EXPECT_LT(check({z}, [&](Tape& t) { return t.weighted_bce(t.sigmoid(z), labels, 85.0, 2.0); }), 1e-6);
}

TEST(WeightedBce, HandValues) {
  Tape tape(false);
  const std::vector<int> pos = {1}, neg = {0};
  EXPECT_NEAR(tape.weighted_bce(Tensor::vector({0.5}), pos, 85, 2).item(), 85 * std::log(2.0), 1e-12);
  EXPECT_NEAR(tape.weighted_bce(Tensor::vector({0.5}), neg, 85, 2).item(), 2 * std::log(2.0), 1e-12);
  // Saturated probabilities are clamped before the log.
  EXPECT_NEAR(tape.weighted_bce(Tensor::vector({1.0}), pos, 85, 2).item(), -85 * std::log(1.0 - 1e-7), 1e-15);
  EXPECT_NEAR(tape.weighted_bce(Tensor::vector({0.0}), pos, 85, 2).item(), -85 * std::log(1e-7), 1e-9);
  EXPECT_THROW(tape.weighted_bce(Tensor::vector({0.5, 0.5}), pos, 85, 2), ShapeError);
}

TEST(WeightedBce, ClampedEntriesPassNoGradient) {
  Tensor p = Tensor::vector({1.0, 0.3}, true);
  Tape tape;
  const std::vector<int> labels = {1, 1};
  tape.backward(tape.weighted_bce(p, labels, 85, 2));
  EXPECT_EQ(p.grad()[0], 0.0);
  EXPECT_NEAR(p.grad()[1], -85.0 / 0.3, 1e-9);
}

TEST(GradCheck, QuadraticIsExact) {
  Rng rng(9);
  const Tensor a = random_tensor(rng, {3, 3});
  const double err = check({a}, [&](Tape& t) { return t.sum(t.mul(a, a)); });
  // No truncation error for a quadratic; what remains is round-off.
  EXPECT_LT(err, 1e-7);
}

TEST(GradCheck, DetectsWrongGradient) {
  // A loss whose tape is deliberately detached from one input: the analytic
  // gradient is zero, the numeric one is not.
  Tensor a = Tensor::vector({0.5, -0.3}, true);
  const auto f = [&](Tape& t) {
    const Tensor detached = a.clone();
    return t.add(t.sum(t.mul(detached, detached)), t.scale(t.sum(a), 0.0));
  };
  const std::vector<NamedParameter> params = {{"a", a}};
  const auto result = grad_check(f, params);
  EXPECT_GT(result.max_rel_error, 0.5);
  EXPECT_EQ(result.worst_parameter, "a");
}

TEST(AdaDelta, ZeroGradientLeavesParameter) {
  Tensor p = Tensor::vector({0.25, -1.5}, true);
  p.mutable_grad();
  AdaDelta opt({{"p", p}});
  opt.step();
  EXPECT_EQ(p[0], 0.25);
  EXPECT_EQ(p[1], -1.5);
}

TEST(AdaDelta, FirstStepHandValue) {
  Tensor p = Tensor::vector({0.0}, true);
  AdaDelta opt({{"p", p}}, {.lr = 1.0});
  p.mutable_grad()[0] = 1.0;
  opt.step();
  const double dx = -std::sqrt(1e-6) / std::sqrt(0.05 + 1e-6);
  EXPECT_NEAR(p[0], dx, 1e-15 * std::abs(dx));
  EXPECT_NEAR(opt.avg_sq_grad(0)[0], 0.05, 1e-15);
  EXPECT_NEAR(opt.avg_sq_update(0)[0], 0.05 * dx * dx, 1e-15 * dx * dx);
  EXPECT_EQ(p.grad()[0], 0.0);  // gradients are cleared
}

TEST(AdaDelta, LearningRateScalesAppliedStep) {
  Tensor p = Tensor::vector({0.0}, true);
  AdaDelta opt({{"p", p}});
  p.mutable_grad()[0] = 1.0;
  opt.step();
  EXPECT_NEAR(p[0], 0.1 * -std::sqrt(1e-6) / std::sqrt(0.05 + 1e-6), 1e-18);
}

TEST(AdaDelta, MatchesScalarSimulation) {
  Tensor p = Tensor::vector({1.0}, true);
  AdaDelta opt({{"p", p}});
  double x = 1.0, eg = 0.0, edx = 0.0;
  for (int t = 0; t < 100; ++t) {
    const double g = std::sin(0.3 * t) + 0.5;
    p.mutable_grad()[0] = g;
    opt.step();
    eg = 0.95 * eg + 0.05 * g * g;
    const double dx = -std::sqrt(edx + 1e-6) / std::sqrt(eg + 1e-6) * g;
    edx = 0.95 * edx + 0.05 * dx * dx;
    x += 0.1 * dx;
    ASSERT_NEAR(p[0], x, 1e-14);
  }
}

TEST(AdaDelta, RepeatedGradientConvergesToFixedPoint) {
  // With constant g the step magnitude rises monotonically toward |g|, the
  // fixed point of the accumulator recursion. A large eps makes it fast.
  Tensor p = Tensor::vector({0.0}, true);
  AdaDelta opt({{"p", p}}, {.lr = 1.0, .eps = 0.1});
  double prev_step = 0.0;
  for (int t = 0; t < 6000; ++t) {
    const double before = p[0];
    p.mutable_grad()[0] = 1.0;
    opt.step();
    const double step = before - p[0];
    ASSERT_GE(step, prev_step - 1e-15);
    prev_step = step;
  }
  EXPECT_NEAR(prev_step, 1.0, 1e-6);
}

TEST(AdaDelta, ClipsGlobalNorm) {
  Tensor a = Tensor::vector({0.0}, true);
  Tensor b = Tensor::vector({0.0}, true);
  a.mutable_grad()[0] = 30.0;
  b.mutable_grad()[0] = 40.0;
  const std::vector<NamedParameter> params = {{"a", a}, {"b", b}};
  const double norm = clip_grad_norm(params, 5.0);
  EXPECT_DOUBLE_EQ(norm, 50.0);
  EXPECT_DOUBLE_EQ(a.grad()[0], 3.0);
  EXPECT_DOUBLE_EQ(b.grad()[0], 4.0);
  EXPECT_DOUBLE_EQ(clip_grad_norm(params, 10.0), 5.0);
  EXPECT_DOUBLE_EQ(a.grad()[0], 3.0);
}

TEST(Determinism, SameInputsSameBits) {
  auto run = [] {
    Rng rng(3);
    const Tensor a = random_tensor(rng, {4, 4});
    Tape tape(false);
    return tape.sum(tape.tanh(tape.matmul(a, tape.softmax(a)))).item();
  };
  EXPECT_EQ(run(), run());
}

}  // namespace
}  // namespace winsumm
