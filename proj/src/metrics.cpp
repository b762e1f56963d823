// Copyright 2026 The hires-diffuse Authors
// SPDX-License-Identifier: Apache-2.0

#include "hires/metrics.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <fmt/format.h>

namespace hires {
namespace {

std::array<double, kSsimWindow> gaussian_window() {
  std::array<double, kSsimWindow> w{};
  const int half = kSsimWindow / 2;
  double sum = 0.0;
  for (int i = 0; i < kSsimWindow; ++i) {
    const double d = i - half;
    w[i] = std::exp(-d * d / (2.0 * kSsimSigma * kSsimSigma));
    sum += w[i];
  }
  for (double& v : w) v /= sum;
  return w;
}

// Separable "valid" Gaussian filter of a single-channel h x w plane.
std::vector<double> filter_valid(const std::vector<double>& plane, int h, int w,
                                 const std::array<double, kSsimWindow>& win) {
  const int out_w = w - kSsimWindow + 1;
  const int out_h = h - kSsimWindow + 1;
  std::vector<double> horiz(static_cast<std::size_t>(h) * out_w);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < out_w; ++x) {
      double acc = 0.0;
      for (int k = 0; k < kSsimWindow; ++k) acc += win[k] * plane[y * w + x + k];
      horiz[static_cast<std::size_t>(y) * out_w + x] = acc;
    }
  }
  std::vector<double> out(static_cast<std::size_t>(out_h) * out_w);
  for (int y = 0; y < out_h; ++y) {
    for (int x = 0; x < out_w; ++x) {
      double acc = 0.0;
      for (int k = 0; k < kSsimWindow; ++k) {
        acc += win[k] * horiz[static_cast<std::size_t>(y + k) * out_w + x];
      }
      out[static_cast<std::size_t>(y) * out_w + x] = acc;
    }
  }
  return out;
}

}  // namespace

double psnr(const TensorF32& a, const TensorF32& b, double peak) {
  require_same_shape(a, b, "psnr");
  if (!(peak > 0.0)) throw std::invalid_argument("psnr: peak must be positive");
  double sq = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = static_cast<double>(a.data()[i]) - b.data()[i];
    sq += d * d;
  }
  const double mse = sq / static_cast<double>(a.size());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(peak * peak / mse);
}

double ssim(const TensorF32& a, const TensorF32& b) {
  require_same_shape(a, b, "ssim");
  const int h = a.height();
  const int w = a.width();
  if (h < kSsimWindow || w < kSsimWindow) {
    throw std::invalid_argument(
        fmt::format("ssim: image {}x{} is smaller than the {}x{} window", h, w, kSsimWindow,
                    kSsimWindow));
  }
  const double c1 = (kSsimK1 * 1.0) * (kSsimK1 * 1.0);
  const double c2 = (kSsimK2 * 1.0) * (kSsimK2 * 1.0);
  const auto win = gaussian_window();
  const std::size_t n = static_cast<std::size_t>(h) * w;

  double total = 0.0;
  std::vector<double> x(n), y(n), xx(n), yy(n), xy(n);
  for (int ch = 0; ch < a.channels(); ++ch) {
    for (int r = 0; r < h; ++r) {
      for (int col = 0; col < w; ++col) {
        const std::size_t i = static_cast<std::size_t>(r) * w + col;
        x[i] = a.at(r, col, ch);
        y[i] = b.at(r, col, ch);
        xx[i] = x[i] * x[i];
        yy[i] = y[i] * y[i];
        xy[i] = x[i] * y[i];
      }
    }
    const auto mx = filter_valid(x, h, w, win);
    const auto my = filter_valid(y, h, w, win);
    const auto sxx = filter_valid(xx, h, w, win);
    const auto syy = filter_valid(yy, h, w, win);
    const auto sxy = filter_valid(xy, h, w, win);
    double sum = 0.0;
    for (std::size_t i = 0; i < mx.size(); ++i) {
      const double vx = sxx[i] - mx[i] * mx[i];
      const double vy = syy[i] - my[i] * my[i];
      const double cov = sxy[i] - mx[i] * my[i];
      sum += ((2.0 * mx[i] * my[i] + c1) * (2.0 * cov + c2)) /
             ((mx[i] * mx[i] + my[i] * my[i] + c1) * (vx + vy + c2));
    }
    total += sum / static_cast<double>(mx.size());
  }
  return total / a.channels();
}

}  // namespace hires
