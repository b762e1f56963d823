// Copyright 2026 The hires-diffuse Authors
// SPDX-License-Identifier: Apache-2.0

#include "hires/attention.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

#include "hires/rounding.hpp"

namespace hires {
namespace {

void check_scaling(double scaling) {
  if (!(scaling > 0.0) || !std::isfinite(scaling)) {
    throw std::invalid_argument(fmt::format("pfsa: scaling must be positive, got {}", scaling));
  }
}

// Softmax row i of the token similarity matrix into `row`.
void attention_row(const std::vector<double>& tokens, std::size_t n, std::size_t c,
                   std::size_t i, double scaling, std::vector<double>& row) {
  const double* q = &tokens[i * c];
  double max_logit = -INFINITY;
  for (std::size_t j = 0; j < n; ++j) {
    const double* k = &tokens[j * c];
    double dot = 0.0;
    for (std::size_t ch = 0; ch < c; ++ch) dot += q[ch] * k[ch];
    row[j] = dot / scaling;
    max_logit = std::max(max_logit, row[j]);
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    row[j] = std::exp(row[j] - max_logit);
    sum += row[j];
  }
  for (std::size_t j = 0; j < n; ++j) row[j] /= sum;
}

std::vector<double> to_double(const Matrix& m) { return {m.data.begin(), m.data.end()}; }

}  // namespace

std::vector<double> pfsa_attention_weights(const TensorF32& z, double scaling) {
  require_finite(z, "pfsa");
  check_scaling(scaling);
  const Matrix tokens = flatten(z);
  const auto values = to_double(tokens);
  const std::size_t n = tokens.rows;
  std::vector<double> weights(n * n);
  std::vector<double> row(n);
  for (std::size_t i = 0; i < n; ++i) {
    attention_row(values, n, tokens.cols, i, scaling, row);
    std::copy(row.begin(), row.end(), weights.begin() + static_cast<std::ptrdiff_t>(i * n));
  }
  return weights;
}

TensorF32 pfsa(const TensorF32& z, double scaling) {
  require_finite(z, "pfsa");
  check_scaling(scaling);
  const Matrix tokens = flatten(z);
  const auto values = to_double(tokens);
  const std::size_t n = tokens.rows;
  const std::size_t c = tokens.cols;

  Matrix out{n, c, std::vector<float>(n * c)};
  std::vector<double> row(n);
  std::vector<double> acc(c);
  for (std::size_t i = 0; i < n; ++i) {
    attention_row(values, n, c, i, scaling, row);
    std::fill(acc.begin(), acc.end(), 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      const double w = row[j];
      const double* v = &values[j * c];
      for (std::size_t ch = 0; ch < c; ++ch) acc[ch] += w * v[ch];
    }
    for (std::size_t ch = 0; ch < c; ++ch) out(i, ch) = static_cast<float>(acc[ch]);
  }
  return unflatten(out, z.height(), z.width());
}

TensorF32 pfsa(const TensorF32& z) { return pfsa(z, std::sqrt(static_cast<double>(z.channels()))); }

TensorF32 attentive_guide(const TensorF32& z, double gamma_t, std::optional<double> scaling) {
  if (!(gamma_t >= 0.0 && gamma_t <= 1.0)) {
    throw std::invalid_argument(
        fmt::format("attentive_guide: gamma_t must lie in [0, 1], got {}", gamma_t));
  }
  require_finite(z, "attentive_guide");
  if (gamma_t == 0.0) return z;
  const TensorF32 attended = scaling ? pfsa(z, *scaling) : pfsa(z);
  if (gamma_t == 1.0) return attended;

  TensorF32 out(z.height(), z.width(), z.channels());
  auto src = z.data();
  auto att = attended.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    dst[i] = static_cast<float>(gamma_t * att[i] + (1.0 - gamma_t) * src[i]);
  }
  return out;
}

GuidanceSchedule build_guidance_schedule(double gamma, double eta1, double beta, int t0) {
  if (t0 < 1) throw std::invalid_argument("guidance schedule: t0 must be >= 1");
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw std::invalid_argument(fmt::format("guidance schedule: gamma must be >= 0, got {}", gamma));
  }
  if (!(eta1 >= 0.0 && eta1 < 1.0)) {
    throw std::invalid_argument(
        fmt::format("guidance schedule: eta1 must lie in [0, 1), got {}", eta1));
  }
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw std::invalid_argument(fmt::format("guidance schedule: beta must be > 0, got {}", beta));
  }
  const int k = round_steps(eta1, t0);
  const int span = t0 - k;
  if (span <= 0) {
    throw std::invalid_argument(fmt::format(
        "guidance schedule: eta1 = {} delays all {} steps (k = {})", eta1, t0, k));
  }

  GuidanceSchedule schedule{gamma, eta1, beta, t0, k, std::vector<double>(t0 + 1, 0.0)};
  for (int t = 0; t <= span; ++t) {
    const double phase = static_cast<double>(span - t) / span * std::numbers::pi;
    schedule.per_step[t] = gamma * std::pow((std::cos(phase) + 1.0) / 2.0, beta);
  }
  return schedule;
}

}  // namespace hires
