// Copyright 2026 The hires-diffuse Authors
// SPDX-License-Identifier: Apache-2.0

#include "hires/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include <fmt/format.h>

namespace hires {

Shape2D::Shape2D(int h, int w) : height(h), width(w) {
  if (h < 1 || w < 1) {
    throw std::invalid_argument(fmt::format("shape must be positive, got {}x{}", h, w));
  }
}

std::string Shape2D::to_string() const { return fmt::format("{}x{}", height, width); }

Shape2D parse_shape(const std::string& text) {
  const auto x = text.find_first_of("xX");
  if (x == std::string::npos || x == 0 || x + 1 == text.size()) {
    throw std::invalid_argument(fmt::format("expected HxW, got '{}'", text));
  }
  auto parse_dim = [&](const std::string& part) {
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != part.size()) {
      throw std::invalid_argument(fmt::format("expected HxW, got '{}'", text));
    }
    return value;
  };
  return Shape2D(parse_dim(text.substr(0, x)), parse_dim(text.substr(x + 1)));
}

TensorF32::TensorF32(int height, int width, int channels, float fill)
    : height_(height), width_(width), channels_(channels) {
  if (height < 1 || width < 1 || channels < 1) {
    throw std::invalid_argument(
        fmt::format("tensor dimensions must be positive, got {}x{}x{}", height, width, channels));
  }
  if (!std::isfinite(fill)) throw std::invalid_argument("tensor fill value must be finite");
  data_.assign(static_cast<std::size_t>(height) * width * channels, fill);
}

TensorF32::TensorF32(int height, int width, int channels, std::vector<float> data)
    : height_(height), width_(width), channels_(channels), data_(std::move(data)) {
  if (height < 1 || width < 1 || channels < 1) {
    throw std::invalid_argument(
        fmt::format("tensor dimensions must be positive, got {}x{}x{}", height, width, channels));
  }
  if (data_.size() != static_cast<std::size_t>(height) * width * channels) {
    throw std::invalid_argument(fmt::format("tensor data has {} elements, expected {}x{}x{}",
                                            data_.size(), height, width, channels));
  }
  if (!all_finite(data_)) throw std::invalid_argument("tensor data contains non-finite values");
}

bool all_finite(std::span<const float> values) {
  return std::all_of(values.begin(), values.end(), [](float v) { return std::isfinite(v); });
}

bool bitwise_equal(const TensorF32& a, const TensorF32& b) {
  return a.same_shape(b) &&
         std::memcmp(a.data().data(), b.data().data(), a.size() * sizeof(float)) == 0;
}

void require_finite(const TensorF32& t, const char* what) {
  if (t.empty()) throw std::invalid_argument(fmt::format("{}: tensor is empty", what));
  if (!all_finite(t.data())) {
    throw std::invalid_argument(fmt::format("{}: tensor contains non-finite values", what));
  }
}

void require_same_shape(const TensorF32& a, const TensorF32& b, const char* what) {
  if (!a.same_shape(b)) {
    throw std::invalid_argument(fmt::format("{}: shape mismatch {}x{}x{} vs {}x{}x{}", what,
                                            a.height(), a.width(), a.channels(), b.height(),
                                            b.width(), b.channels()));
  }
}

Matrix flatten(const TensorF32& t) {
  // Channel-last row-major storage already is the (h*w) x c layout.
  return Matrix{static_cast<std::size_t>(t.height()) * t.width(),
                static_cast<std::size_t>(t.channels()), t.values()};
}

TensorF32 unflatten(const Matrix& m, int height, int width) {
  if (height < 1 || width < 1 || m.rows != static_cast<std::size_t>(height) * width) {
    throw std::invalid_argument(
        fmt::format("cannot unflatten {} rows into {}x{}", m.rows, height, width));
  }
  return TensorF32(height, width, static_cast<int>(m.cols), m.data);
}

}  // namespace hires
