// Copyright 2026 The hires-diffuse Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "hires/rng.hpp"
#include "hires/tensor.hpp"

namespace hires {

/// Cumulative signal fractions alpha_bar[0..T] over the inference grid.
///
/// alpha_bar[0] == 1 and the sequence is strictly decreasing and positive.
struct NoiseSchedule {
  int total_steps = 0;
  std::vector<double> alpha_bar;

  double signal(int t) const;  // sqrt(alpha_bar[t])
  double noise(int t) const;   // sqrt(1 - alpha_bar[t])
  void validate() const;
};

/// alpha_bar[t] = prod_{s=1..t} (1 - beta_s), beta linearly spaced over t0
/// steps from beta_start to beta_end.
NoiseSchedule build_linear_beta_schedule(int t0, double beta_start, double beta_end);

/// Linear-beta schedule defined over `train_steps` training steps and sampled
/// at t0 evenly strided inference steps: alpha_bar[i] is the training
/// alpha_bar at timestep round(i * train_steps / t0). This is how a 50-step
/// sampler walks a 1000-step DDPM schedule.
NoiseSchedule build_strided_schedule(int t0, int train_steps, double beta_start,
                                     double beta_end);

/// Forward diffusion: sqrt(ab_t) * z0 + sqrt(1 - ab_t) * eps, eps drawn from
/// `stream`. Returns z0 unchanged at t = 0 without consuming draws.
TensorF32 diffuse_to(const TensorF32& z0, const NoiseSchedule& schedule, int t,
                     NoiseStream& stream);

/// Same, with the stream keyed (seed, stage 0, step t).
TensorF32 diffuse_to(const TensorF32& z0, const NoiseSchedule& schedule, int t, RngSeed seed);

/// Deterministic (eta = 0) DDIM update from step t to t - 1.
TensorF32 denoise_step(const TensorF32& z_t, const TensorF32& eps_pred,
                       const NoiseSchedule& schedule, int t);

/// eps_uncond + scale * (eps_cond - eps_uncond).
TensorF32 cfg_combine(const TensorF32& eps_uncond, const TensorF32& eps_cond, double scale);

/// Reverse-process update rule. The pipeline only talks to this interface so
/// other samplers can be slotted in.
class Sampler {
 public:
  virtual ~Sampler() = default;
  virtual const NoiseSchedule& schedule() const = 0;
  /// Maps z_t to z_{t-1} given the noise prediction at step t.
  virtual TensorF32 step(const TensorF32& z_t, const TensorF32& eps_pred, int t) const = 0;
};

class DdimSampler final : public Sampler {
 public:
  explicit DdimSampler(NoiseSchedule schedule);
  const NoiseSchedule& schedule() const override { return schedule_; }
  TensorF32 step(const TensorF32& z_t, const TensorF32& eps_pred, int t) const override;

 private:
  NoiseSchedule schedule_;
};

}  // namespace hires
