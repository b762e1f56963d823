// Copyright 2026 The hires-diffuse Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

#include "hires/pipeline.hpp"

namespace hires {
namespace {

PipelineConfig small_config() {
  PipelineConfig cfg;
  cfg.t0 = 20;
  cfg.train = {32, 32};
  cfg.target = {64, 64};
  cfg.eta2 = {0.5};
  cfg.gamma = 0.1;
  cfg.eta1 = 0.1;
  return cfg;
}

TEST(ConfigTest, DefaultsValidate) {
  EXPECT_NO_THROW(PipelineConfig{}.validate(8));
}

TEST(ConfigTest, ErrorsNameTheKey) {
  const auto key_of = [](PipelineConfig cfg) {
    try {
      cfg.validate(8);
    } catch (const ConfigError& e) {
      return e.key();
    }
    return std::string("none");
  };
  PipelineConfig c;
  c.gamma = 1.5;
  EXPECT_EQ(key_of(c), "gamma");
  c = {};
  c.eta1 = 1.0;
  EXPECT_EQ(key_of(c), "eta1");
  c = {};
  c.eta2 = {0.001};
  EXPECT_EQ(key_of(c), "eta2");
  c = {};
  c.target = {250, 256};
  EXPECT_EQ(key_of(c), "target");
  c = {};
  c.t0 = 0;
  EXPECT_EQ(key_of(c), "t0");
  c = {};
  c.pfsa_scaling = -1.0;
  EXPECT_EQ(key_of(c), "pfsa_scaling");
  c = {};
  c.eta2 = {};
  EXPECT_EQ(key_of(c), "eta2");
  c = {};
  c.beta_decay = 0.0;
  EXPECT_EQ(key_of(c), "beta");
  c = {};
  c.train_steps = 10;
  EXPECT_EQ(key_of(c), "train_steps");
}

TEST(GenerateTest, ShapesAndTrace) {
  const PipelineConfig cfg = small_config();
  const ToyModels models = make_toy_models(cfg, 8, 4, 0.5, 0.05, RngSeed{0});
  const GenerationResult r = generate(cfg, models.view());
  EXPECT_EQ(r.image.shape(), cfg.target);
  EXPECT_EQ(r.image.channels(), 3);
  EXPECT_EQ(r.latent.shape(), Shape2D(8, 8));
  ASSERT_EQ(r.trace.stages.size(), 2u);
  EXPECT_EQ(r.trace.stages[0].records.size(), 20u);
  EXPECT_EQ(r.trace.stages[1].records.size(), 10u);
  EXPECT_EQ(r.trace.stages[1].latent_shape, Shape2D(8, 8));
  EXPECT_TRUE(all_finite(r.image.values()));
}

TEST(GenerateTest, GuidanceWindowFollowsSchedule) {
  PipelineConfig cfg;
  cfg.train = {32, 32};
  cfg.target = {32, 32};
  cfg.eta2 = {};
  const ToyModels models = make_toy_models(cfg, 8, 4, 0.0, 1.0, RngSeed{0});
  const GenerationResult r = generate(cfg, models.view());
  const auto& recs = r.trace.stages.at(0).records;
  ASSERT_EQ(recs.size(), 50u);
  for (const StepRecord& rec : recs) {
    if (rec.t >= 47) {
      EXPECT_FALSE(rec.guided) << rec.t;
      EXPECT_EQ(rec.gamma, 0.0);
    } else {
      EXPECT_TRUE(rec.guided) << rec.t;
      EXPECT_EQ(rec.gamma, r.guidance.at(rec.t));
    }
  }
  EXPECT_EQ(recs[3].t, 46);
  EXPECT_EQ(recs.back().t, 0);
  EXPECT_EQ(recs.back().gamma, 0.0);
}

TEST(GenerateTest, ZeroGammaMatchesHookDisabled) {
  PipelineConfig cfg = small_config();
  cfg.gamma = 0.0;
  const ToyModels models = make_toy_models(cfg, 8, 4, 0.5, 0.05, RngSeed{0});
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    cfg.seed = RngSeed{seed};
    const auto a = generate(cfg, models.view(), GuidanceHook::kEnabled);
    const auto b = generate(cfg, models.view(), GuidanceHook::kDisabled);
    EXPECT_TRUE(bitwise_equal(a.image, b.image));
    EXPECT_TRUE(bitwise_equal(a.latent, b.latent));
  }
}

TEST(GenerateTest, GuidanceChangesOutput) {
  PipelineConfig cfg = small_config();
  const ToyModels models = make_toy_models(cfg, 8, 4, 0.5, 0.05, RngSeed{0});
  const auto a = generate(cfg, models.view(), GuidanceHook::kEnabled);
  const auto b = generate(cfg, models.view(), GuidanceHook::kDisabled);
  EXPECT_FALSE(bitwise_equal(a.latent, b.latent));
  cfg.pfsa_scaling = 0.5;
  EXPECT_FALSE(bitwise_equal(generate(cfg, models.view()).latent, a.latent));
}

TEST(GenerateTest, DeterministicPerSeed) {
  PipelineConfig cfg = small_config();
  const ToyModels models = make_toy_models(cfg, 8, 4, 0.5, 0.05, RngSeed{0});
  const auto a = generate(cfg, models.view());
  const auto b = generate(cfg, models.view());
  EXPECT_TRUE(bitwise_equal(a.image, b.image));
  cfg.seed = RngSeed{1};
  EXPECT_FALSE(bitwise_equal(generate(cfg, models.view()).image, a.image));
}

TEST(GenerateTest, StageOneStatisticsFollowLinearRecurrence) {
  // With the Gaussian denoiser each DDIM step is affine per element,
  // z <- cz * z + c0, so the output law is N(m, g^2) with z_T ~ N(0, 1).
  PipelineConfig cfg;
  cfg.train = {128, 128};
  cfg.target = {128, 128};
  cfg.eta2 = {};
  cfg.gamma = 0.0;
  const double mu = 0.5, s2 = 1.0;
  const ToyModels models = make_toy_models(cfg, 8, 4, mu, s2, RngSeed{0});
  const NoiseSchedule s = make_noise_schedule(cfg);
  double m = 0.0, g = 1.0;
  for (int t = cfg.t0; t >= 1; --t) {
    const double a = s.signal(t), b = s.noise(t), a2 = s.signal(t - 1), b2 = s.noise(t - 1);
    const double k = b / (s.alpha_bar[t] * s2 + 1.0 - s.alpha_bar[t]);
    const double cz = a2 * (1.0 - b * k) / a + b2 * k;
    const double c0 = mu * k * (a2 * b - b2 * a);
    m = cz * m + c0;
    g = cz * g;
  }
  const double want_var = g * g;
  double sum = 0.0, sq = 0.0;
  std::size_t n = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    cfg.seed = RngSeed{seed};
    const auto r = generate(cfg, models.view(), GuidanceHook::kDisabled);
    for (const float v : r.latent.values()) {
      sum += v;
      sq += static_cast<double>(v) * v;
      ++n;
    }
  }
  const double mean = sum / n;
  const double var = sq / n - mean * mean;
  EXPECT_NEAR(mean, m, 5.0 * std::sqrt(want_var / n));
  EXPECT_NEAR(var, want_var, 5.0 * want_var * std::sqrt(2.0 / n));
  EXPECT_LT(want_var, 1.0);
}

TEST(RefinementTest, RejectsBadStage) {
  const PipelineConfig cfg = small_config();
  const ToyModels models = make_toy_models(cfg, 8, 4, 0.5, 0.05, RngSeed{0});
  const StagePlan plan = make_stage_plan(cfg, 8);
  const DdimSampler sampler(make_noise_schedule(cfg));
  const TensorF32 z(4, 4, 4, 0.0f);
  EXPECT_THROW(run_refinement_stage(z, 0, plan, cfg, models.view(), sampler), std::out_of_range);
  EXPECT_THROW(run_refinement_stage(z, 2, plan, cfg, models.view(), sampler), std::out_of_range);
  EXPECT_NO_THROW(run_refinement_stage(z, 1, plan, cfg, models.view(), sampler));
}

}  // namespace
}  // namespace hires
