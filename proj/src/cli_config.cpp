// Copyright 2026 The hires-diffuse Authors
// SPDX-License-Identifier: Apache-2.0

#include "hires/cli_config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace hires {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_real(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size() || !std::isfinite(v)) {
    throw ConfigError(key, fmt::format("expected a real number, got '{}'", value));
  }
  return v;
}

long long parse_integer(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size()) {
    throw ConfigError(key, fmt::format("expected an integer, got '{}'", value));
  }
  return v;
}

int parse_int(const std::string& key, const std::string& value) {
  const long long v = parse_integer(key, value);
  if (v < -2147483647LL || v > 2147483647LL) throw ConfigError(key, "integer out of range");
  return static_cast<int>(v);
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    if (!value.empty() && value[0] != '-') v = std::stoull(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size()) {
    throw ConfigError(key, fmt::format("expected an unsigned 64-bit integer, got '{}'", value));
  }
  return v;
}

Shape2D parse_shape_value(const std::string& key, const std::string& value) {
  try {
    return parse_shape(value);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(key, e.what());
  }
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  if (trim(value).empty()) return out;
  std::stringstream in(value);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_real(key, trim(item)));
  return out;
}

}  // namespace

void CliSettings::validate() const {
  const int dim = 3 * spatial_factor * spatial_factor;
  if (spatial_factor < 1) throw ConfigError("f", fmt::format("must be >= 1, got {}", spatial_factor));
  if (latent_channels < 1 || latent_channels > dim) {
    throw ConfigError("latent_channels",
                      fmt::format("must lie in [1, {}], got {}", dim, latent_channels));
  }
  if (!(prior_var > 0.0)) throw ConfigError("prior_var", fmt::format("must be > 0, got {}", prior_var));
  pipeline.validate(spatial_factor);
}

void apply_setting(CliSettings& s, const std::string& key, const std::string& raw) {
  const std::string value = trim(raw);
  PipelineConfig& p = s.pipeline;
  if (key == "t0") {
    p.t0 = parse_int(key, value);
  } else if (key == "gamma") {
    p.gamma = parse_real(key, value);
  } else if (key == "eta1") {
    p.eta1 = parse_real(key, value);
  } else if (key == "beta") {
    p.beta_decay = parse_real(key, value);
  } else if (key == "eta2") {
    p.eta2 = parse_list(key, value);
  } else if (key == "cfg_scale") {
    p.cfg_scale = parse_real(key, value);
  } else if (key == "train") {
    p.train = parse_shape_value(key, value);
  } else if (key == "target") {
    p.target = parse_shape_value(key, value);
  } else if (key == "seed") {
    p.seed = RngSeed{parse_u64(key, value)};
    s.seed_set = true;
  } else if (key == "pfsa_scaling") {
    p.pfsa_scaling = parse_real(key, value);
  } else if (key == "label") {
    p.label = parse_int(key, value);
  } else if (key == "train_steps") {
    p.train_steps = parse_int(key, value);
  } else if (key == "beta_start") {
    p.beta_start = parse_real(key, value);
  } else if (key == "beta_end") {
    p.beta_end = parse_real(key, value);
  } else if (key == "f") {
    s.spatial_factor = parse_int(key, value);
  } else if (key == "latent_channels") {
    s.latent_channels = parse_int(key, value);
  } else if (key == "prior_mean") {
    s.prior_mean = parse_real(key, value);
  } else if (key == "prior_var") {
    s.prior_var = parse_real(key, value);
  } else if (key == "ae_seed") {
    s.ae_seed = parse_u64(key, value);
  } else if (key == "out") {
    s.out_dir = value;
  } else if (key == "corpus") {
    s.corpus_dir = value;
  } else {
    throw ConfigError(key, "unknown key");
  }
}

CliSettings parse_config_text(const std::string& text, CliSettings base) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config", fmt::format("line {}: expected 'key = value'", line_no));
    }
    apply_setting(base, trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  return base;
}

CliSettings load_config_file(const std::filesystem::path& path, CliSettings base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", fmt::format("cannot read '{}'", path.string()));
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config_text(text.str(), std::move(base));
}

}  // namespace hires
