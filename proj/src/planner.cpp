// Copyright 2026 The hires-diffuse Authors
// SPDX-License-Identifier: Apache-2.0

#include "hires/planner.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "hires/rounding.hpp"

namespace hires {
namespace {

__extension__ using u128 = unsigned __int128;

// Smallest h >= 1 with h*h*den >= num.
long long ceil_sqrt_ratio(u128 num, u128 den) {
  auto fits = [&](long long h) { return static_cast<u128>(h) * h * den >= num; };
  long long h = static_cast<long long>(
      std::ceil(std::sqrt(static_cast<long double>(num) / static_cast<long double>(den))));
  if (h < 1) h = 1;
  while (h > 1 && fits(h - 1)) --h;
  while (!fits(h)) ++h;
  return h;
}

void require_positive(Shape2D s, const char* what) {
  if (s.height < 1 || s.width < 1) {
    throw std::invalid_argument(fmt::format("{} shape must be positive, got {}", what, s.to_string()));
  }
}

}  // namespace

int snap_up(int value, int factor) {
  if (factor < 1) throw std::invalid_argument("snap_up: factor must be >= 1");
  return (value + factor - 1) / factor * factor;
}

Shape2D initial_shape(Shape2D train, Shape2D target, int f) {
  require_positive(train, "train");
  require_positive(target, "target");
  if (f < 1) throw std::invalid_argument("spatial factor must be >= 1");
  if (train.height % f != 0 || train.width % f != 0) {
    throw std::invalid_argument(
        fmt::format("train shape {} is not divisible by factor {}", train.to_string(), f));
  }
  const u128 pixels = static_cast<u128>(train.area());
  const auto h = ceil_sqrt_ratio(pixels * target.height, static_cast<u128>(target.width));
  const auto w = ceil_sqrt_ratio(pixels * target.width, static_cast<u128>(target.height));
  return Shape2D(snap_up(static_cast<int>(h), f), snap_up(static_cast<int>(w), f));
}

StagePlan build_stage_plan(Shape2D train, Shape2D target, int t0, const std::vector<double>& eta2,
                           int f) {
  if (t0 < 1) throw std::invalid_argument("t0 must be >= 1");
  const Shape2D start = initial_shape(train, target, f);
  if (target.height % f != 0 || target.width % f != 0) {
    throw std::invalid_argument(
        fmt::format("target shape {} is not divisible by factor {}", target.to_string(), f));
  }
  if (target.area() < start.area()) {
    throw std::invalid_argument(fmt::format("target {} has fewer pixels than the initial shape {}",
                                            target.to_string(), start.to_string()));
  }
  if (eta2.empty() && !(target == start)) {
    throw std::invalid_argument(fmt::format(
        "eta2 is empty but target {} differs from the initial shape {}", target.to_string(),
        start.to_string()));
  }

  StagePlan plan;
  plan.aspect_ratio = static_cast<double>(target.height) / target.width;
  plan.denoise_steps.push_back(t0);
  for (double eta : eta2) {
    if (!(eta > 0.0 && eta <= 1.0)) {
      throw std::invalid_argument(fmt::format("eta2 entries must lie in (0, 1], got {}", eta));
    }
    const int steps = round_steps(eta, t0);
    if (steps < 1) {
      throw std::invalid_argument(
          fmt::format("eta2 entry {} gives zero denoising steps at t0 = {}", eta, t0));
    }
    plan.denoise_steps.push_back(steps);
  }

  const auto n = static_cast<long long>(eta2.size());
  plan.shapes.push_back(start);
  for (long long i = 1; i < n; ++i) {
    // area_i = a0 + (a1 - a0) * i / n, kept as the exact fraction scaled / n
    const u128 scaled = static_cast<u128>(start.area() * n + (target.area() - start.area()) * i);
    const auto h = ceil_sqrt_ratio(scaled * target.height, static_cast<u128>(n) * target.width);
    const auto w = ceil_sqrt_ratio(scaled * target.width, static_cast<u128>(n) * target.height);
    plan.shapes.emplace_back(snap_up(static_cast<int>(h), f), snap_up(static_cast<int>(w), f));
  }
  if (n >= 1) plan.shapes.push_back(target);
  return plan;
}

}  // namespace hires
