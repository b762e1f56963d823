// Copyright 2026 The hires-diffuse Authors
// SPDX-License-Identifier: Apache-2.0

#include "hires/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "hires/resample.hpp"
#include "hires/rounding.hpp"

namespace hires {
namespace {

StepRecord summarize(int t, bool guided, double gamma, const TensorF32& z) {
  StepRecord rec{t, guided, gamma, 0.0, 0.0, std::numeric_limits<double>::infinity(),
                 -std::numeric_limits<double>::infinity()};
  double sum = 0.0;
  for (float v : z.data()) {
    sum += v;
    rec.min = std::min(rec.min, static_cast<double>(v));
    rec.max = std::max(rec.max, static_cast<double>(v));
  }
  rec.mean = sum / static_cast<double>(z.size());
  double sq = 0.0;
  for (float v : z.data()) sq += (v - rec.mean) * (v - rec.mean);
  rec.var = sq / static_cast<double>(z.size());
  return rec;
}

TensorF32 guided_noise(const PipelineConfig& cfg, const Denoiser& denoiser, const TensorF32& z,
                       int t) {
  const TensorF32 uncond = denoiser.predict_noise(z, t, ConditioningTag::unconditional());
  const TensorF32 cond = denoiser.predict_noise(z, t, ConditioningTag::conditional(cfg.label));
  require_same_shape(z, uncond, "denoiser output");
  require_same_shape(z, cond, "denoiser output");
  return cfg_combine(uncond, cond, cfg.cfg_scale);
}

Shape2D latent_of(Shape2D pixels, int f) { return {pixels.height / f, pixels.width / f}; }

}  // namespace

ConfigError::ConfigError(std::string key, const std::string& message)
    : std::invalid_argument(fmt::format("invalid '{}': {}", key, message)), key_(std::move(key)) {}

void PipelineConfig::validate(int f) const {
  auto fail = [](const char* key, const std::string& msg) { throw ConfigError(key, msg); };
  if (t0 < 1) fail("t0", fmt::format("must be >= 1, got {}", t0));
  if (!(gamma >= 0.0 && gamma <= 1.0)) fail("gamma", fmt::format("must lie in [0, 1], got {}", gamma));
  if (!(eta1 >= 0.0 && eta1 < 1.0)) fail("eta1", fmt::format("must lie in [0, 1), got {}", eta1));
  if (t0 - round_steps(eta1, t0) <= 0) {
    fail("eta1", fmt::format("{} delays every one of the {} steps", eta1, t0));
  }
  if (!(beta_decay > 0.0) || !std::isfinite(beta_decay)) {
    fail("beta", fmt::format("must be > 0, got {}", beta_decay));
  }
  for (double eta : eta2) {
    if (!(eta > 0.0 && eta <= 1.0)) fail("eta2", fmt::format("entries must lie in (0, 1], got {}", eta));
    if (round_steps(eta, t0) < 1) {
      fail("eta2", fmt::format("entry {} gives zero denoising steps at t0 = {}", eta, t0));
    }
  }
  if (!(cfg_scale >= 0.0) || !std::isfinite(cfg_scale)) {
    fail("cfg_scale", fmt::format("must be >= 0, got {}", cfg_scale));
  }
  if (pfsa_scaling && !(*pfsa_scaling > 0.0 && std::isfinite(*pfsa_scaling))) {
    fail("pfsa_scaling", fmt::format("must be > 0, got {}", *pfsa_scaling));
  }
  if (f < 1) fail("f", "spatial factor must be >= 1");
  if (train.height < 1 || train.width < 1 || train.height % f != 0 || train.width % f != 0) {
    fail("train", fmt::format("{} must be positive and divisible by {}", train.to_string(), f));
  }
  if (target.height < 1 || target.width < 1 || target.height % f != 0 || target.width % f != 0) {
    fail("target", fmt::format("{} must be positive and divisible by {}", target.to_string(), f));
  }
  const Shape2D start = initial_shape(train, target, f);
  if (target.area() < start.area()) {
    fail("target", fmt::format("{} has fewer pixels than the stage-0 shape {}", target.to_string(),
                               start.to_string()));
  }
  if (eta2.empty() && !(target == start)) {
    fail("eta2", fmt::format("is empty but target {} differs from the stage-0 shape {}",
                             target.to_string(), start.to_string()));
  }
  if (train_steps < t0) {
    fail("train_steps", fmt::format("must be >= t0 ({}), got {}", t0, train_steps));
  }
  if (!(beta_start > 0.0 && beta_start < 1.0)) {
    fail("beta_start", fmt::format("must lie in (0, 1), got {}", beta_start));
  }
  if (!(beta_end >= beta_start && beta_end < 1.0)) {
    fail("beta_end", fmt::format("must lie in [beta_start, 1), got {}", beta_end));
  }
}

NoiseSchedule make_noise_schedule(const PipelineConfig& cfg) {
  return build_strided_schedule(cfg.t0, cfg.train_steps, cfg.beta_start, cfg.beta_end);
}

GuidanceSchedule make_guidance_schedule(const PipelineConfig& cfg) {
  return build_guidance_schedule(cfg.gamma, cfg.eta1, cfg.beta_decay, cfg.t0);
}

StagePlan make_stage_plan(const PipelineConfig& cfg, int f) {
  return build_stage_plan(cfg.train, cfg.target, cfg.t0, cfg.eta2, f);
}

TensorF32 run_stage_one(const PipelineConfig& cfg, const Models& models, const Sampler& sampler,
                        const GuidanceSchedule& guidance, Shape2D pixel_shape, StageTrace* trace,
                        GuidanceHook hook) {
  const int f = models.autoencoder.spatial_factor();
  const Shape2D latent = latent_of(pixel_shape, f);
  const int steps = cfg.t0;
  if (guidance.total_steps != steps || sampler.schedule().total_steps != steps) {
    throw std::invalid_argument("run_stage_one: schedules do not match t0");
  }

  NoiseStream init(cfg.seed, 0, static_cast<std::uint32_t>(steps));
  TensorF32 z = sample_standard_normal(latent.height, latent.width,
                                       models.autoencoder.latent_channels(), init);

  StageRecord record{0, pixel_shape, latent, steps, {}};
  const int last_guided = steps - 1 - guidance.delay_steps;
  for (int t = steps - 1; t >= 0; --t) {
    z = sampler.step(z, guided_noise(cfg, models.denoiser, z, t + 1), t + 1);
    bool guided = false;
    double gamma_t = 0.0;
    if (hook == GuidanceHook::kEnabled && t <= last_guided) {
      guided = true;
      gamma_t = guidance.at(t);
      z = attentive_guide(z, gamma_t, cfg.pfsa_scaling);
    }
    if (trace) record.records.push_back(summarize(t, guided, gamma_t, z));
  }
  require_finite(z, "stage 0 output");
  if (trace) trace->stages.push_back(std::move(record));
  return z;
}

TensorF32 run_refinement_stage(const TensorF32& z_prev, int stage, const StagePlan& plan,
                               const PipelineConfig& cfg, const Models& models,
                               const Sampler& sampler, StageTrace* trace) {
  if (stage < 1 || stage >= plan.num_stages()) {
    throw std::out_of_range(fmt::format("refinement stage {} outside plan with {} stages", stage,
                                        plan.num_stages()));
  }
  const int steps = plan.denoise_steps.at(static_cast<std::size_t>(stage));
  if (steps < 1 || steps > sampler.schedule().total_steps) {
    throw std::invalid_argument(
        fmt::format("refinement stage {}: step count {} outside [1, {}]", stage, steps,
                    sampler.schedule().total_steps));
  }
  const Shape2D pixels = plan.shapes[static_cast<std::size_t>(stage)];
  const int f = models.autoencoder.spatial_factor();
  if (pixels.height % f != 0 || pixels.width % f != 0) {
    throw std::invalid_argument(fmt::format("refinement stage {}: shape {} not divisible by {}",
                                            stage, pixels.to_string(), f));
  }

  const TensorF32 upsampled = bicubic_resample(models.autoencoder.decode(z_prev), pixels);
  const TensorF32 clean = models.autoencoder.encode(upsampled);
  NoiseStream stream(cfg.seed, static_cast<std::uint32_t>(stage), static_cast<std::uint32_t>(steps));
  TensorF32 z = diffuse_to(clean, sampler.schedule(), steps, stream);

  StageRecord record{stage, pixels, latent_of(pixels, f), steps, {}};
  for (int t = steps - 1; t >= 0; --t) {
    z = sampler.step(z, guided_noise(cfg, models.denoiser, z, t + 1), t + 1);
    if (trace) record.records.push_back(summarize(t, false, 0.0, z));
  }
  require_finite(z, "refinement output");
  if (trace) trace->stages.push_back(std::move(record));
  return z;
}

GenerationResult generate(const PipelineConfig& cfg, const Models& models, GuidanceHook hook) {
  const int f = models.autoencoder.spatial_factor();
  cfg.validate(f);
  GenerationResult result;
  result.plan = make_stage_plan(cfg, f);
  result.guidance = make_guidance_schedule(cfg);
  const DdimSampler sampler(make_noise_schedule(cfg));

  TensorF32 z = run_stage_one(cfg, models, sampler, result.guidance, result.plan.shapes.front(),
                              &result.trace, hook);
  for (int stage = 1; stage < result.plan.num_stages(); ++stage) {
    z = run_refinement_stage(z, stage, result.plan, cfg, models, sampler, &result.trace);
  }
  result.image = models.autoencoder.decode(z);
  result.latent = std::move(z);
  if (!(result.image.shape() == cfg.target)) {
    throw std::logic_error(fmt::format("generated {} instead of target {}",
                                       result.image.shape().to_string(), cfg.target.to_string()));
  }
  return result;
}

ToyModels make_toy_models(const PipelineConfig& cfg, int f, int c, double prior_mean,
                          double prior_var, RngSeed ae_seed) {
  return ToyModels{OrthogonalPatchAutoencoder(f, c, ae_seed),
                   AnalyticGaussianDenoiser(TensorF32(1, 1, c, static_cast<float>(prior_mean)),
                                            prior_var, make_noise_schedule(cfg))};
}

}  // namespace hires
