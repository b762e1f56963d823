// Copyright 2026 The hires-diffuse Authors
// SPDX-License-Identifier: Apache-2.0

#include "hires/resample.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <fmt/format.h>

namespace hires {
namespace {

struct Taps {
  std::array<int, 4> index;
  std::array<double, 4> weight;
};

std::vector<Taps> axis_taps(int in_size, int out_size) {
  std::vector<Taps> taps(out_size);
  const double scale = static_cast<double>(in_size) / out_size;
  for (int dst = 0; dst < out_size; ++dst) {
    const double src = (dst + 0.5) * scale - 0.5;
    const int base = static_cast<int>(std::floor(src)) - 1;
    for (int k = 0; k < 4; ++k) {
      const int pos = base + k;
      taps[dst].index[k] = std::clamp(pos, 0, in_size - 1);
      taps[dst].weight[k] = cubic_kernel(src - pos);
    }
  }
  return taps;
}

}  // namespace

double cubic_kernel(double x, double a) {
  x = std::abs(x);
  if (x <= 1.0) return ((a + 2.0) * x - (a + 3.0)) * x * x + 1.0;
  if (x < 2.0) return ((a * x - 5.0 * a) * x + 8.0 * a) * x - 4.0 * a;
  return 0.0;
}

TensorF32 bicubic_resample(const TensorF32& t, Shape2D target) {
  require_finite(t, "bicubic_resample");
  if (target.height < 1 || target.width < 1) {
    throw std::invalid_argument("bicubic_resample: target shape must be positive");
  }
  const int in_h = t.height();
  const int in_w = t.width();
  const int ch = t.channels();
  const auto row_taps = axis_taps(in_h, target.height);
  const auto col_taps = axis_taps(in_w, target.width);

  // Horizontal pass: in_h x out_w x ch.
  std::vector<double> tmp(static_cast<std::size_t>(in_h) * target.width * ch, 0.0);
  for (int r = 0; r < in_h; ++r) {
    for (int x = 0; x < target.width; ++x) {
      double* out = &tmp[(static_cast<std::size_t>(r) * target.width + x) * ch];
      const Taps& tp = col_taps[x];
      for (int k = 0; k < 4; ++k) {
        const double w = tp.weight[k];
        if (w == 0.0) continue;
        for (int c = 0; c < ch; ++c) out[c] += w * t.at(r, tp.index[k], c);
      }
    }
  }

  TensorF32 result(target.height, target.width, ch);
  std::vector<double> acc(ch);
  for (int y = 0; y < target.height; ++y) {
    const Taps& tp = row_taps[y];
    for (int x = 0; x < target.width; ++x) {
      std::fill(acc.begin(), acc.end(), 0.0);
      for (int k = 0; k < 4; ++k) {
        const double w = tp.weight[k];
        if (w == 0.0) continue;
        const double* src = &tmp[(static_cast<std::size_t>(tp.index[k]) * target.width + x) * ch];
        for (int c = 0; c < ch; ++c) acc[c] += w * src[c];
      }
      for (int c = 0; c < ch; ++c) result.at(y, x, c) = static_cast<float>(acc[c]);
    }
  }
  return result;
}

TensorF32 downsample(const TensorF32& t, int factor) {
  if (factor < 1) throw std::invalid_argument("downsample: factor must be >= 1");
  if (t.height() < factor || t.width() < factor) {
    throw std::invalid_argument(fmt::format("downsample: factor {} exceeds tensor size {}x{}",
                                            factor, t.height(), t.width()));
  }
  return bicubic_resample(t, Shape2D(t.height() / factor, t.width() / factor));
}

}  // namespace hires
