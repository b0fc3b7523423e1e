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

#include "winsumm/optim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "winsumm/error.hpp"
#include "winsumm/random.hpp"

namespace winsumm {

double clip_grad_norm(std::span<const NamedParameter> params, double max_norm) {
  double sq = 0.0;
  for (const auto& p : params)
    for (double g : p.tensor.grad()) sq += g * g;
  const double norm = std::sqrt(sq);
  if (max_norm > 0.0 && norm > max_norm) {
    const double factor = max_norm / norm;
    for (const auto& p : params) {
      Tensor t = p.tensor;
      for (double& g : t.mutable_grad()) g *= factor;
    }
  }
  return norm;
}

AdaDelta::AdaDelta(std::vector<NamedParameter> params, AdaDeltaOptions opts)
    : params_(std::move(params)), opts_(opts) {
  for (const auto& p : params_) {
    sq_grad_.emplace_back(p.tensor.size(), 0.0);
    sq_update_.emplace_back(p.tensor.size(), 0.0);
  }
}

void AdaDelta::step() {
  last_norm_ = clip_grad_norm(params_, opts_.clip_norm);
  const double rho = opts_.rho, eps = opts_.eps;
  for (std::size_t k = 0; k < params_.size(); ++k) {
    Tensor t = params_[k].tensor;
    auto value = t.value();
    auto grad = t.mutable_grad();
    auto& eg = sq_grad_[k];
    auto& ex = sq_update_[k];
    for (std::size_t i = 0; i < value.size(); ++i) {
      const double g = grad[i];
      eg[i] = rho * eg[i] + (1.0 - rho) * g * g;
      const double dx = -std::sqrt(ex[i] + eps) / std::sqrt(eg[i] + eps) * g;
      ex[i] = rho * ex[i] + (1.0 - rho) * dx * dx;
      value[i] += opts_.lr * dx;
    }
    t.zero_grad();
  }
  ++steps_;
}

GradCheckResult grad_check(const std::function<Tensor(Tape&)>& loss_fn,
                           std::span<const NamedParameter> params,
                           const GradCheckOptions& opts) {
  for (const auto& p : params) {
    Tensor t = p.tensor;
    t.set_requires_grad(true);
    t.mutable_grad();
    t.zero_grad();
  }
  {
    Tape tape;
    tape.backward(loss_fn(tape));
  }
  auto evaluate = [&] {
    Tape tape(false);
    return loss_fn(tape).item();
  };

  GradCheckResult result;
  Rng rng(opts.seed);
  for (const auto& p : params) {
    Tensor t = p.tensor;
    const std::vector<double> analytic(t.grad().begin(), t.grad().end());
    std::vector<std::size_t> coords(t.size());
    std::iota(coords.begin(), coords.end(), std::size_t{0});
    if (coords.size() > opts.samples_per_tensor) {
      rng.shuffle(std::span<std::size_t>(coords));
      coords.resize(opts.samples_per_tensor);
      std::sort(coords.begin(), coords.end());
    }
    double worst = 0.0;
    for (std::size_t idx : coords) {
      const double saved = t[idx];
      t[idx] = saved + opts.step;
      const double up = evaluate();
      t[idx] = saved - opts.step;
      const double down = evaluate();
      t[idx] = saved;
      const double numeric = (up - down) / (2.0 * opts.step);
      const double err = std::abs(analytic[idx] - numeric) /
                         std::max(1e-8, std::abs(analytic[idx]) + std::abs(numeric));
      worst = std::max(worst, err);
      if (err > result.max_rel_error || result.worst_parameter.empty()) {
        result.max_rel_error = err;
        result.worst_parameter = p.name;
        result.worst_index = idx;
      }
      ++result.coordinates;
    }
    result.per_parameter.emplace_back(p.name, worst);
    t.zero_grad();
  }
  return result;
}

}  // namespace winsumm
