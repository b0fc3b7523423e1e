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
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "winsumm/tensor.hpp"

namespace winsumm {

struct NamedParameter {
  std::string name;
  Tensor tensor;
};

/// Scale all gradients so their joint L2 norm is at most `max_norm`.
/// Returns the norm before clipping. A non-positive `max_norm` disables it.
double clip_grad_norm(std::span<const NamedParameter> params, double max_norm);

struct AdaDeltaOptions {
  double lr = 0.1;
  double rho = 0.95;
  double eps = 1e-6;
  double clip_norm = 5.0;
};

/// AdaDelta with a learning-rate multiplier on the applied update:
///   E[g^2]  <- rho E[g^2] + (1-rho) g^2
///   dx      <- -sqrt(E[dx^2] + eps) / sqrt(E[g^2] + eps) * g
///   E[dx^2] <- rho E[dx^2] + (1-rho) dx^2
///   x       <- x + lr * dx
class AdaDelta {
 public:
  AdaDelta(std::vector<NamedParameter> params, AdaDeltaOptions opts = {});

  /// Clip, update every parameter from its gradient, then zero the gradients.
  void step();

  const AdaDeltaOptions& options() const { return opts_; }
  std::span<const double> avg_sq_grad(std::size_t param) const { return sq_grad_[param]; }
  std::span<const double> avg_sq_update(std::size_t param) const { return sq_update_[param]; }
  // Mutable accumulators, used to resume or to set up a known state.
  std::span<double> mutable_avg_sq_grad(std::size_t param) { return sq_grad_[param]; }
  std::span<double> mutable_avg_sq_update(std::size_t param) { return sq_update_[param]; }
  double last_grad_norm() const { return last_norm_; }
  std::size_t steps() const { return steps_; }

 private:
  std::vector<NamedParameter> params_;
  AdaDeltaOptions opts_;
  std::vector<std::vector<double>> sq_grad_;
  std::vector<std::vector<double>> sq_update_;
  double last_norm_ = 0.0;
  std::size_t steps_ = 0;
};

struct GradCheckOptions {
  double step = 1e-5;
  // Tensors larger than this are checked on a random sample of this many
  // coordinates; smaller ones are checked exhaustively.
  std::size_t samples_per_tensor = 32;
  std::uint64_t seed = 7;
};

struct GradCheckResult {
  double max_rel_error = 0.0;
  std::string worst_parameter;
  std::size_t worst_index = 0;
  std::size_t coordinates = 0;
  std::vector<std::pair<std::string, double>> per_parameter;
};

/// Compare reverse-mode gradients of `loss_fn` with central differences.
/// Relative error per coordinate is |g_ad - g_fd| / max(1e-8, |g_ad| + |g_fd|).
/// `loss_fn` must be deterministic and build its graph on the tape it is given.
GradCheckResult grad_check(const std::function<Tensor(Tape&)>& loss_fn,
                           std::span<const NamedParameter> params,
                           const GradCheckOptions& opts = {});

}  // namespace winsumm
