// Copyright 2026 The hires-diffuse Authors
// SPDX-License-Identifier: Apache-2.0

#include "hires/noise_schedule.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace hires {
namespace {

std::vector<double> linear_betas(int steps, double beta_start, double beta_end) {
  if (!(beta_start > 0.0) || !(beta_start <= beta_end) || !(beta_end < 1.0)) {
    throw std::invalid_argument(fmt::format(
        "beta range must satisfy 0 < start <= end < 1, got ({}, {})", beta_start, beta_end));
  }
  std::vector<double> betas(steps);
  for (int s = 0; s < steps; ++s) {
    const double frac = steps == 1 ? 0.0 : static_cast<double>(s) / (steps - 1);
    betas[s] = beta_start + (beta_end - beta_start) * frac;
  }
  return betas;
}

std::vector<double> cumulative_alpha(const std::vector<double>& betas) {
  std::vector<double> alpha_bar(betas.size() + 1);
  alpha_bar[0] = 1.0;
  for (std::size_t s = 0; s < betas.size(); ++s) alpha_bar[s + 1] = alpha_bar[s] * (1.0 - betas[s]);
  return alpha_bar;
}

void check_step(const NoiseSchedule& schedule, int t, int lo, const char* what) {
  if (t < lo || t > schedule.total_steps) {
    throw std::out_of_range(
        fmt::format("{}: step {} outside [{}, {}]", what, t, lo, schedule.total_steps));
  }
}

}  // namespace

double NoiseSchedule::signal(int t) const { return std::sqrt(alpha_bar.at(t)); }
double NoiseSchedule::noise(int t) const { return std::sqrt(1.0 - alpha_bar.at(t)); }

void NoiseSchedule::validate() const {
  if (total_steps < 1 || alpha_bar.size() != static_cast<std::size_t>(total_steps) + 1) {
    throw std::invalid_argument("noise schedule: alpha_bar must hold total_steps + 1 entries");
  }
  if (alpha_bar[0] != 1.0) throw std::invalid_argument("noise schedule: alpha_bar[0] must be 1");
  for (int t = 1; t <= total_steps; ++t) {
    if (!(alpha_bar[t] > 0.0) || !(alpha_bar[t] < alpha_bar[t - 1])) {
      throw std::invalid_argument(
          fmt::format("noise schedule: alpha_bar not strictly decreasing at t = {}", t));
    }
  }
}

NoiseSchedule build_linear_beta_schedule(int t0, double beta_start, double beta_end) {
  if (t0 < 1) throw std::invalid_argument("noise schedule: t0 must be >= 1");
  NoiseSchedule schedule{t0, cumulative_alpha(linear_betas(t0, beta_start, beta_end))};
  schedule.validate();
  return schedule;
}

NoiseSchedule build_strided_schedule(int t0, int train_steps, double beta_start,
                                     double beta_end) {
  if (t0 < 1 || train_steps < t0) {
    throw std::invalid_argument(fmt::format(
        "noise schedule: need 1 <= t0 <= train_steps, got t0 = {}, train_steps = {}", t0,
        train_steps));
  }
  const auto train = cumulative_alpha(linear_betas(train_steps, beta_start, beta_end));
  NoiseSchedule schedule{t0, std::vector<double>(t0 + 1)};
  for (int i = 0; i <= t0; ++i) {
    // round-half-up of i * train_steps / t0 in exact integer arithmetic
    const long long num = 2LL * i * train_steps + t0;
    schedule.alpha_bar[i] = train[static_cast<std::size_t>(num / (2LL * t0))];
  }
  schedule.validate();
  return schedule;
}

TensorF32 diffuse_to(const TensorF32& z0, const NoiseSchedule& schedule, int t,
                     NoiseStream& stream) {
  check_step(schedule, t, 0, "diffuse_to");
  require_finite(z0, "diffuse_to");
  if (t == 0) return z0;
  const double a = schedule.signal(t);
  const double b = schedule.noise(t);
  TensorF32 out(z0.height(), z0.width(), z0.channels());
  auto src = z0.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    dst[i] = static_cast<float>(a * src[i] + b * stream.next_normal());
  }
  return out;
}

TensorF32 diffuse_to(const TensorF32& z0, const NoiseSchedule& schedule, int t, RngSeed seed) {
  NoiseStream stream(seed, 0, static_cast<std::uint32_t>(t));
  return diffuse_to(z0, schedule, t, stream);
}

TensorF32 denoise_step(const TensorF32& z_t, const TensorF32& eps_pred,
                       const NoiseSchedule& schedule, int t) {
  check_step(schedule, t, 1, "denoise_step");
  require_same_shape(z_t, eps_pred, "denoise_step");
  const double a = schedule.signal(t);
  const double b = schedule.noise(t);
  const double a_prev = schedule.signal(t - 1);
  const double b_prev = schedule.noise(t - 1);
  TensorF32 out(z_t.height(), z_t.width(), z_t.channels());
  auto z = z_t.data();
  auto eps = eps_pred.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    const double x0 = (z[i] - b * eps[i]) / a;
    dst[i] = static_cast<float>(a_prev * x0 + b_prev * eps[i]);
  }
  require_finite(out, "denoise_step");
  return out;
}

TensorF32 cfg_combine(const TensorF32& eps_uncond, const TensorF32& eps_cond, double scale) {
  require_same_shape(eps_uncond, eps_cond, "cfg_combine");
  TensorF32 out(eps_uncond.height(), eps_uncond.width(), eps_uncond.channels());
  auto u = eps_uncond.data();
  auto c = eps_cond.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    dst[i] = static_cast<float>(u[i] + scale * (static_cast<double>(c[i]) - u[i]));
  }
  return out;
}

DdimSampler::DdimSampler(NoiseSchedule schedule) : schedule_(std::move(schedule)) {
  schedule_.validate();
}

TensorF32 DdimSampler::step(const TensorF32& z_t, const TensorF32& eps_pred, int t) const {
  return denoise_step(z_t, eps_pred, schedule_, t);
}

}  // namespace hires
