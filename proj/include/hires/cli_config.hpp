// Copyright 2026 The hires-diffuse Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "hires/pipeline.hpp"

namespace hires {

/// Everything a config file can set: the pipeline knobs plus the toy model
/// geometry and output paths.
///
/// File format: one `key = value` per line, `#` starts a comment, blank lines
/// ignored. Unknown keys are rejected. Recognised keys:
///   t0, gamma, eta1, beta, eta2 (comma list, may be empty), cfg_scale,
///   train (HxW), target (HxW), seed, pfsa_scaling, label, train_steps,
///   beta_start, beta_end, f, latent_channels, prior_mean, prior_var,
///   ae_seed, out, corpus
struct CliSettings {
  PipelineConfig pipeline;
  int spatial_factor = 8;
  int latent_channels = 4;
  double prior_mean = 0.0;
  double prior_var = 1.0;
  std::uint64_t ae_seed = 0;
  std::string out_dir = "out";
  std::string corpus_dir;
  bool seed_set = false;

  /// Validates the pipeline config and the toy model geometry.
  void validate() const;
};

/// Sets one key from its textual value. Throws ConfigError naming the key.
void apply_setting(CliSettings& settings, const std::string& key, const std::string& value);

/// Parses config text on top of `base`. Throws ConfigError.
CliSettings parse_config_text(const std::string& text, CliSettings base = {});

/// Reads and parses a config file. Throws ConfigError (key "config") when the
/// file cannot be read.
CliSettings load_config_file(const std::filesystem::path& path, CliSettings base = {});

}  // namespace hires
