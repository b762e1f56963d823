// Copyright 2026 The hires-diffuse Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "hires/tensor.hpp"

namespace hires {

/// Progressive resolution ladder. Stage 0 runs at the aspect-corrected
/// training-resolution shape; stages 1..n refine at increasing pixel counts
/// and the last stage is exactly the target.
struct StagePlan {
  std::vector<Shape2D> shapes;   // pixel space, one per stage
  std::vector<int> denoise_steps;  // [T0, T1, ..., Tn]
  double aspect_ratio = 1.0;     // target height / width

  int num_stages() const { return static_cast<int>(shapes.size()); }
};

/// Smallest multiple of `factor` that is >= value.
int snap_up(int value, int factor);

/// Shape with the training pixel count and the target aspect ratio:
/// ceil(sqrt(H*W*r)) x ceil(sqrt(H*W/r)), r = target.h / target.w, each
/// snapped up to a multiple of f. The ceilings are evaluated in exact
/// integer arithmetic.
Shape2D initial_shape(Shape2D train, Shape2D target, int f);

/// Builds the stage ladder. Stage pixel counts are linearly spaced between
/// the initial shape's area and the target area; each intermediate stage
/// takes ceil(sqrt(area*r)) x ceil(sqrt(area/r)) snapped up to multiples of
/// f. Step counts are [t0] followed by round(eta * t0) for each eta in eta2.
///
/// Throws std::invalid_argument when the target is not divisible by f, the
/// target has fewer pixels than the initial shape, eta2 is empty while the
/// target differs from the initial shape, or an eta yields zero steps.
StagePlan build_stage_plan(Shape2D train, Shape2D target, int t0, const std::vector<double>& eta2,
                           int f);

}  // namespace hires
