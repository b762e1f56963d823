// Copyright 2026 The hires-diffuse Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "hires/tensor.hpp"

namespace hires {

inline constexpr int kSsimWindow = 11;
inline constexpr double kSsimSigma = 1.5;
inline constexpr double kSsimK1 = 0.01;
inline constexpr double kSsimK2 = 0.03;

/// 10 log10(peak^2 / MSE) in dB over every element. Identical inputs give
/// +infinity.
double psnr(const TensorF32& a, const TensorF32& b, double peak = 1.0);

/// Mean SSIM with an 11x11 Gaussian window (sigma 1.5), K1 = 0.01,
/// K2 = 0.03 and dynamic range 1. Local statistics are taken only where the
/// window fits inside the image ("valid" placement), averaged per channel and
/// then across channels.
double ssim(const TensorF32& a, const TensorF32& b);

}  // namespace hires
