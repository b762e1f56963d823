// Copyright 2026 The hires-diffuse Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "hires/tensor.hpp"

namespace hires {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// "TF32" raw format: 4-byte magic, u32 height, u32 width, u32 channels
// (little-endian), then height*width*channels little-endian IEEE-754 floats
// in channel-last row-major order.
void write_tf32(std::ostream& out, const TensorF32& t);
TensorF32 read_tf32(std::istream& in);
void write_tf32(const std::filesystem::path& path, const TensorF32& t);
TensorF32 read_tf32(const std::filesystem::path& path);

/// Writes an 8-bit RGB PNG. Values are clamped to [0, 1] and mapped to
/// [0, 255] with round-half-up. Requires channels == 3.
void write_png(const std::filesystem::path& path, const TensorF32& image);

/// Reads an 8-bit PNG as an RGB tensor in [0, 1]. Gray, palette and alpha
/// inputs are converted to RGB.
TensorF32 read_png(const std::filesystem::path& path);

/// The 8-bit code write_png stores for value v.
unsigned char quantize_unit(float v);

}  // namespace hires
