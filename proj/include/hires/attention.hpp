// Copyright 2026 The hires-diffuse Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <vector>

#include "hires/tensor.hpp"

namespace hires {

/// Row-stochastic token-to-token attention weights, (h*w) x (h*w).
/// Exposed for inspection and tests; pfsa() does not materialize it.
std::vector<double> pfsa_attention_weights(const TensorF32& z, double scaling);

/// Parameter-free self-attention.
///
/// Tokens are the spatial cells of z (h*w rows of c channels). Each output
/// token is the softmax(<q, k> / scaling)-weighted average of all input
/// tokens, with the query, key and value all equal to the raw latent. The
/// softmax subtracts the row maximum before exponentiation.
TensorF32 pfsa(const TensorF32& z, double scaling);

/// pfsa with the default scaling sqrt(channels).
TensorF32 pfsa(const TensorF32& z);

/// gamma_t * pfsa(z) + (1 - gamma_t) * z. gamma_t == 0 returns z unchanged.
TensorF32 attentive_guide(const TensorF32& z, double gamma_t,
                          std::optional<double> scaling = std::nullopt);

/// Per-step attentive-guidance scales gamma_t, t = 0..total_steps.
struct GuidanceSchedule {
  double base_scale = 0.0;
  double delay_rate = 0.0;
  double decay_factor = 3.0;
  int total_steps = 0;
  int delay_steps = 0;
  std::vector<double> per_step;

  double at(int t) const { return per_step.at(static_cast<std::size_t>(t)); }
  /// Last step (counting down) that receives guidance: total_steps - delay_steps.
  int first_guided_step() const { return total_steps - delay_steps; }
};

/// Builds the delayed cosine-decay schedule:
///   k = round(eta1 * t0),
///   gamma_t = gamma * ((cos(pi * (t0 - k - t) / (t0 - k)) + 1) / 2)^beta  for t <= t0 - k,
///   gamma_t = 0 otherwise.
/// Throws std::invalid_argument if t0 - k <= 0 or any argument is out of range.
GuidanceSchedule build_guidance_schedule(double gamma, double eta1, double beta, int t0);

}  // namespace hires
