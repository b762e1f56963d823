// Copyright 2026 The hires-diffuse Authors
// SPDX-License-Identifier: Apache-2.0

// hires-diffuse: progressive high-resolution generation with toy models,
// schedule/plan inspection and the pixel-vs-latent upsampling study.
//
// Exit codes: 0 success, 1 runtime failure, 2 configuration/usage error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "hires/cli_config.hpp"
#include "hires/pilot.hpp"
#include "hires/pipeline.hpp"
#include "hires/reports.hpp"
#include "hires/tensor_io.hpp"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;

// Flag overrides shared by the pipeline subcommands, applied after the
// config file in command-line order.
struct Overrides {
  std::string config_path;
  std::vector<std::pair<std::string, std::string>> values;
  bool trace = false;
  int jobs = 1;
};

void add_override(CLI::App* cmd, Overrides& ov, const std::string& flag, const std::string& key,
                  const std::string& help) {
  cmd->add_option_function<std::string>(
      flag, [&ov, key](const std::string& v) { ov.values.emplace_back(key, v); }, help);
}

void add_pipeline_options(CLI::App* cmd, Overrides& ov) {
  cmd->add_option("--config", ov.config_path, "Flat key = value config file");
  add_override(cmd, ov, "--seed", "seed", "Noise seed (U64); falls back to $HIRES_DIFFUSE_SEED");
  add_override(cmd, ov, "--target", "target", "Target resolution HxW");
  add_override(cmd, ov, "--gamma", "gamma", "Attentive guidance scale");
  add_override(cmd, ov, "--eta1", "eta1", "Guidance delay rate");
  add_override(cmd, ov, "--eta2", "eta2", "Progressive scheduler, comma separated");
  add_override(cmd, ov, "--t0", "t0", "Stage-0 denoising steps");
  add_override(cmd, ov, "--beta", "beta", "Guidance decay factor");
  add_override(cmd, ov, "--cfg", "cfg_scale", "Classifier-free guidance scale");
  add_override(cmd, ov, "--out", "out", "Output directory");
}

hires::CliSettings resolve_settings(const Overrides& ov) {
  hires::CliSettings settings;
  if (!ov.config_path.empty()) settings = hires::load_config_file(ov.config_path);
  for (const auto& [key, value] : ov.values) hires::apply_setting(settings, key, value);
  if (!settings.seed_set) {
    if (const char* env = std::getenv("HIRES_DIFFUSE_SEED"); env != nullptr && *env != '\0') {
      hires::apply_setting(settings, "seed", env);
    }
  }
  settings.validate();
  return settings;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw hires::IoError(fmt::format("cannot open '{}' for writing", path.string()));
  out << text;
}

int cmd_generate(const Overrides& ov) {
  const hires::CliSettings s = resolve_settings(ov);
  const auto models = hires::make_toy_models(s.pipeline, s.spatial_factor, s.latent_channels,
                                             s.prior_mean, s.prior_var, hires::RngSeed{s.ae_seed});
  const hires::GenerationResult result = hires::generate(s.pipeline, models.view());

  const std::filesystem::path out_dir = s.out_dir;
  std::filesystem::create_directories(out_dir);
  hires::write_png(out_dir / "output.png", result.image);
  hires::write_tf32(out_dir / "output.tf32", result.image);
  if (ov.trace) write_text(out_dir / "trace.csv", hires::trace_csv(result.trace));

  std::cout << hires::plan_csv(result.plan);
  std::cout << fmt::format("wrote {} ({})\n", (out_dir / "output.png").string(),
                           result.image.shape().to_string());
  return 0;
}

int cmd_schedule_dump(const Overrides& ov) {
  const hires::CliSettings s = resolve_settings(ov);
  std::cout << hires::schedule_csv(hires::make_guidance_schedule(s.pipeline));
  return 0;
}

int cmd_plan_dump(const Overrides& ov) {
  const hires::CliSettings s = resolve_settings(ov);
  std::cout << hires::plan_csv(hires::make_stage_plan(s.pipeline, s.spatial_factor));
  return 0;
}

struct PilotOptions {
  std::string config_path;
  std::string corpus_dir;
  std::vector<std::uint64_t> synthetic;
  int r = 2;
  int size = 128;
  std::optional<int> factor;
  std::optional<int> channels;
  std::optional<std::uint64_t> ae_seed;
  std::string out_dir;
  int jobs = 1;
};

int cmd_pilot(const PilotOptions& opt) {
  hires::CliSettings s;
  if (!opt.config_path.empty()) s = hires::load_config_file(opt.config_path);
  if (opt.factor) s.spatial_factor = *opt.factor;
  if (opt.channels) s.latent_channels = *opt.channels;
  if (opt.ae_seed) s.ae_seed = *opt.ae_seed;
  if (!opt.out_dir.empty()) s.out_dir = opt.out_dir;
  if (!opt.corpus_dir.empty()) s.corpus_dir = opt.corpus_dir;
  if (s.spatial_factor < 1) throw hires::ConfigError("f", "must be >= 1");
  if (s.latent_channels < 1 || s.latent_channels > 3 * s.spatial_factor * s.spatial_factor) {
    throw hires::ConfigError("latent_channels", "must lie in [1, 3*f*f]");
  }
  if (opt.r < 1) throw hires::ConfigError("r", "must be >= 1");

  std::vector<hires::CorpusImage> corpus;
  if (!opt.synthetic.empty()) {
    if (opt.synthetic[0] == 0) throw hires::ConfigError("synthetic", "corpus is empty");
    corpus = hires::synthetic_corpus(static_cast<int>(opt.synthetic[0]), opt.synthetic[1], opt.size);
  } else if (!s.corpus_dir.empty()) {
    try {
      corpus = hires::load_png_corpus(s.corpus_dir);
    } catch (const hires::IoError& e) {
      throw hires::ConfigError("corpus", e.what());
    }
    if (corpus.empty()) throw hires::ConfigError("corpus", "no PNG images in " + s.corpus_dir);
  } else {
    throw hires::ConfigError("corpus", "give --corpus DIR or --synthetic N SEED");
  }

  const hires::OrthogonalPatchAutoencoder ae(s.spatial_factor, s.latent_channels,
                                             hires::RngSeed{s.ae_seed});
  const hires::PilotResult result = hires::run_pilot_study(corpus, ae, opt.r, opt.jobs);

  const std::filesystem::path out_dir = s.out_dir;
  std::filesystem::create_directories(out_dir);
  const auto path = out_dir / fmt::format("pilot_r{}.csv", opt.r);
  write_text(path, hires::pilot_csv(result));
  std::cout << fmt::format("r={} images={} pix: psnr={:.4f} ssim={:.4f}  lat: psnr={:.4f} ssim={:.4f}\n",
                           opt.r, corpus.size(), result.pixel.mean_psnr_db, result.pixel.mean_ssim,
                           result.latent.mean_psnr_db, result.latent.mean_ssim);
  std::cout << "wrote " << path.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Progressive high-resolution latent diffusion with attentive guidance"};
  app.require_subcommand(1);

  Overrides gen_ov, sched_ov, plan_ov;
  auto* gen = app.add_subcommand("generate", "Run the two-stage pipeline with toy models");
  add_pipeline_options(gen, gen_ov);
  gen->add_flag("--trace", gen_ov.trace, "Write trace.csv with per-step latent statistics");
  gen->add_option("--jobs", gen_ov.jobs, "Worker threads (generation is sequential)");

  auto* sched = app.add_subcommand("schedule-dump", "Print the guidance schedule as t,gamma_t");
  add_pipeline_options(sched, sched_ov);
  auto* plan = app.add_subcommand("plan-dump", "Print the stage plan as stage,height,width,steps");
  add_pipeline_options(plan, plan_ov);

  PilotOptions pilot_opt;
  auto* pilot = app.add_subcommand("pilot", "Pixel- vs latent-space upsampling study");
  pilot->add_option("--config", pilot_opt.config_path, "Config file (f, latent_channels, ae_seed, out, corpus)");
  pilot->add_option("--corpus", pilot_opt.corpus_dir, "Directory of PNG images");
  pilot->add_option("--synthetic", pilot_opt.synthetic, "Synthetic corpus: N SEED")->expected(2);
  pilot->add_option("--r", pilot_opt.r, "Down/up-sampling factor")->capture_default_str();
  pilot->add_option("--size", pilot_opt.size, "Synthetic image side")->capture_default_str();
  pilot->add_option("--f", pilot_opt.factor, "Autoencoder spatial factor");
  pilot->add_option("--channels", pilot_opt.channels, "Latent channels (3*f*f is lossless)");
  pilot->add_option("--ae-seed", pilot_opt.ae_seed, "Autoencoder mixing seed");
  pilot->add_option("--out", pilot_opt.out_dir, "Output directory");
  pilot->add_option("--jobs", pilot_opt.jobs, "Worker threads")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*gen) return cmd_generate(gen_ov);
    if (*sched) return cmd_schedule_dump(sched_ov);
    if (*plan) return cmd_plan_dump(plan_ov);
    if (*pilot) return cmd_pilot(pilot_opt);
  } catch (const hires::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitRuntime;
}
