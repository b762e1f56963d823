// Copyright 2026 The hires-diffuse Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hires/attention.hpp"
#include "hires/models.hpp"
#include "hires/noise_schedule.hpp"
#include "hires/planner.hpp"
#include "hires/rng.hpp"
#include "hires/tensor.hpp"

namespace hires {

/// A configuration value failed validation. key() is the config-file key.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string key, const std::string& message);
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

struct PipelineConfig {
  int t0 = 50;
  double gamma = 0.004;
  double eta1 = 0.06;
  double beta_decay = 3.0;
  std::vector<double> eta2 = {0.2};
  double cfg_scale = 7.5;
  Shape2D train{128, 128};
  Shape2D target{256, 256};
  RngSeed seed{0};
  std::optional<double> pfsa_scaling;
  int label = 0;

  // Sampler schedule: linear betas over train_steps, strided to t0 steps.
  int train_steps = 1000;
  double beta_start = 1e-4;
  double beta_end = 0.02;

  /// Throws ConfigError naming the first offending key. f is the
  /// autoencoder spatial factor.
  void validate(int f) const;
};

NoiseSchedule make_noise_schedule(const PipelineConfig& cfg);
GuidanceSchedule make_guidance_schedule(const PipelineConfig& cfg);
StagePlan make_stage_plan(const PipelineConfig& cfg, int f);

struct StepRecord {
  int t = 0;           // loop index; the latent after this step is z_t
  bool guided = false;  // attentive-guidance hook ran at this step
  double gamma = 0.0;   // gamma_t applied (0 when not guided)
  double mean = 0.0;
  double var = 0.0;
  double min = 0.0;
  double max = 0.0;
};

struct StageRecord {
  int stage = 0;
  Shape2D pixel_shape;
  Shape2D latent_shape;
  int steps = 0;
  std::vector<StepRecord> records;
};

struct StageTrace {
  std::vector<StageRecord> stages;
};

struct Models {
  const Denoiser& denoiser;
  const Autoencoder& autoencoder;
};

/// kDisabled removes the attentive-guidance hook entirely (ablation and
/// differential testing).
enum class GuidanceHook { kEnabled, kDisabled };

/// Stage 0: draws z_T0 ~ N(0, I) at the latent shape of `pixel_shape`, then
/// for t = T0-1 .. 0 takes one sampler step with the CFG-combined noise
/// prediction at t+1 and, for t <= T0-1-k, applies attentive guidance with
/// gamma_t. Returns z_0.
TensorF32 run_stage_one(const PipelineConfig& cfg, const Models& models, const Sampler& sampler,
                        const GuidanceSchedule& guidance, Shape2D pixel_shape,
                        StageTrace* trace = nullptr, GuidanceHook hook = GuidanceHook::kEnabled);

/// Refinement stage i >= 1: decode, bicubic-upsample to plan.shapes[i] in
/// pixel space, encode, diffuse to T_i with the (seed, i, T_i) stream and
/// denoise T_i steps without guidance.
TensorF32 run_refinement_stage(const TensorF32& z_prev, int stage, const StagePlan& plan,
                               const PipelineConfig& cfg, const Models& models,
                               const Sampler& sampler, StageTrace* trace = nullptr);

struct GenerationResult {
  TensorF32 image;   // decoded, target.h x target.w x 3
  TensorF32 latent;  // final z_0
  StagePlan plan;
  GuidanceSchedule guidance;
  StageTrace trace;
};

/// Full two-stage generation. Validates cfg against the autoencoder.
GenerationResult generate(const PipelineConfig& cfg, const Models& models,
                          GuidanceHook hook = GuidanceHook::kEnabled);

/// Toy model pair for desk-scale runs: an analytic Gaussian denoiser with a
/// broadcast scalar prior over every latent channel, and the patch
/// autoencoder.
struct ToyModels {
  OrthogonalPatchAutoencoder autoencoder;
  AnalyticGaussianDenoiser denoiser;

  Models view() const { return {denoiser, autoencoder}; }
};

ToyModels make_toy_models(const PipelineConfig& cfg, int f, int c, double prior_mean,
                          double prior_var, RngSeed ae_seed);

}  // namespace hires
