// Copyright 2026 The hires-diffuse Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "hires/tensor.hpp"

namespace hires {

/// Keys cubic-convolution parameter (Catmull-Rom).
inline constexpr double kCubicA = -0.5;

/// Keys cubic convolution kernel W(x); zero for |x| >= 2.
double cubic_kernel(double x, double a = kCubicA);

/// Separable bicubic resampling of every channel to `target`.
///
/// Source coordinates use half-pixel centers, src = (dst + 0.5) * in/out - 0.5,
/// and taps outside the image are clamped to the nearest edge sample. No
/// anti-alias prefilter is applied when shrinking.
TensorF32 bicubic_resample(const TensorF32& t, Shape2D target);

/// bicubic_resample to (floor(h / factor), floor(w / factor)).
TensorF32 downsample(const TensorF32& t, int factor);

}  // namespace hires
