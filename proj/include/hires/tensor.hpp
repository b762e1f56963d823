// Copyright 2026 The hires-diffuse Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace hires {

/// Spatial extent of an image or latent grid.
struct Shape2D {
  int height = 0;
  int width = 0;

  Shape2D() = default;
  Shape2D(int h, int w);

  long long area() const { return static_cast<long long>(height) * width; }
  std::string to_string() const;  // "HxW"

  friend bool operator==(const Shape2D&, const Shape2D&) = default;
};

/// Parses "HxW" (e.g. "1024x2048"). Throws std::invalid_argument.
Shape2D parse_shape(const std::string& text);

/// Dense row-major matrix used for the (h*w) x c token view of a tensor.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<float> data;

  float operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  float& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
};

/// Height x width x channels array of 32-bit reals, channel-last row-major.
///
/// Holds both pixel images (channels = 3, values nominally in [0, 1]) and
/// latents. The element count always equals height*width*channels; every
/// constructor rejects non-finite values so downstream code can assume
/// finiteness.
class TensorF32 {
 public:
  TensorF32() = default;
  TensorF32(int height, int width, int channels, float fill = 0.0f);
  TensorF32(int height, int width, int channels, std::vector<float> data);

  int height() const { return height_; }
  int width() const { return width_; }
  int channels() const { return channels_; }
  Shape2D shape() const { return {height_, width_}; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  std::size_t index(int row, int col, int ch) const {
    return (static_cast<std::size_t>(row) * width_ + col) * channels_ + ch;
  }
  float at(int row, int col, int ch) const { return data_[index(row, col, ch)]; }
  float& at(int row, int col, int ch) { return data_[index(row, col, ch)]; }

  std::span<const float> data() const { return data_; }
  std::span<float> data() { return data_; }
  const std::vector<float>& values() const { return data_; }

  bool same_shape(const TensorF32& other) const {
    return height_ == other.height_ && width_ == other.width_ && channels_ == other.channels_;
  }

  friend bool operator==(const TensorF32&, const TensorF32&) = default;

 private:
  int height_ = 0;
  int width_ = 0;
  int channels_ = 0;
  std::vector<float> data_;
};

bool all_finite(std::span<const float> values);

/// Same shape and byte-identical storage (distinguishes -0 from +0).
bool bitwise_equal(const TensorF32& a, const TensorF32& b);

/// Throws std::invalid_argument naming `what` if any element is NaN/Inf.
void require_finite(const TensorF32& t, const char* what);

/// Throws std::invalid_argument unless a and b have identical shapes.
void require_same_shape(const TensorF32& a, const TensorF32& b, const char* what);

/// (h*w) x c view: row index = r*w + col, channel order preserved.
Matrix flatten(const TensorF32& t);

/// Inverse of flatten. matrix.rows must equal height*width.
TensorF32 unflatten(const Matrix& m, int height, int width);

}  // namespace hires
