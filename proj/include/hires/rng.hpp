// Copyright 2026 The hires-diffuse Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "hires/tensor.hpp"

namespace hires {

struct RngSeed {
  std::uint64_t value = 0;
  friend bool operator==(const RngSeed&, const RngSeed&) = default;
};

/// Philox-4x32-10 block function (Salmon et al., Random123).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Counter-based stream of uniforms / standard normals.
///
/// The stream is a pure function of (seed, stage, step) and the draw index,
/// so any two streams with a different key tuple are independent and adding
/// draws to one never shifts another. No std:: distributions are involved,
/// so the normals depend only on the libm transcendental functions.
class NoiseStream {
 public:
  NoiseStream(RngSeed seed, std::uint32_t stage, std::uint32_t step);

  /// Uniform in the open interval (0, 1) with 53-bit resolution.
  double next_uniform();
  /// Standard normal via Box-Muller.
  double next_normal();
  void fill_normal(std::span<float> out);

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::uint32_t stage_;
  std::uint32_t step_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int buffered_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// height x width x channels tensor of i.i.d. N(0, 1) draws.
TensorF32 sample_standard_normal(int height, int width, int channels, NoiseStream& stream);

}  // namespace hires
