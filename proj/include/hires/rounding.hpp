// Copyright 2026 The hires-diffuse Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>

namespace hires {

/// Round-half-up of fraction * total. Used for the guidance delay k and for
/// every per-stage step count, so 0.06 * 50 -> 3, 0.1 * 50 -> 5, 0.2 * 50 -> 10.
inline int round_steps(double fraction, int total) {
  return static_cast<int>(std::floor(fraction * total + 0.5));
}

}  // namespace hires
