// Copyright 2026 The hires-diffuse Authors
// SPDX-License-Identifier: Apache-2.0

#include "hires/tensor_io.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include <fmt/format.h>
#include <png.h>

namespace hires {
namespace {

constexpr std::array<char, 4> kMagic = {'T', 'F', '3', '2'};

void put_u32(std::ostream& out, std::uint32_t v) {
  const std::array<char, 4> b = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                                 static_cast<char>((v >> 16) & 0xff),
                                 static_cast<char>((v >> 24) & 0xff)};
  out.write(b.data(), b.size());
}

std::uint32_t get_u32(std::istream& in) {
  std::array<unsigned char, 4> b{};
  in.read(reinterpret_cast<char*>(b.data()), b.size());
  if (!in) throw IoError("TF32: truncated header");
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

}  // namespace

void write_tf32(std::ostream& out, const TensorF32& t) {
  out.write(kMagic.data(), kMagic.size());
  put_u32(out, static_cast<std::uint32_t>(t.height()));
  put_u32(out, static_cast<std::uint32_t>(t.width()));
  put_u32(out, static_cast<std::uint32_t>(t.channels()));
  for (float v : t.data()) put_u32(out, std::bit_cast<std::uint32_t>(v));
  if (!out) throw IoError("TF32: write failed");
}

TensorF32 read_tf32(std::istream& in) {
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw IoError("TF32: bad magic");
  const std::uint32_t h = get_u32(in);
  const std::uint32_t w = get_u32(in);
  const std::uint32_t c = get_u32(in);
  if (h == 0 || w == 0 || c == 0 || h > (1u << 20) || w > (1u << 20) || c > (1u << 16)) {
    throw IoError(fmt::format("TF32: implausible shape {}x{}x{}", h, w, c));
  }
  std::vector<float> data(static_cast<std::size_t>(h) * w * c);
  for (float& v : data) v = std::bit_cast<float>(get_u32(in));
  if (!all_finite(data)) throw IoError("TF32: payload contains non-finite values");
  return TensorF32(static_cast<int>(h), static_cast<int>(w), static_cast<int>(c), std::move(data));
}

void write_tf32(const std::filesystem::path& path, const TensorF32& t) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
  write_tf32(out, t);
}

TensorF32 read_tf32(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open '{}'", path.string()));
  return read_tf32(in);
}

unsigned char quantize_unit(float v) {
  const double clamped = std::fmin(std::fmax(static_cast<double>(v), 0.0), 1.0);
  return static_cast<unsigned char>(std::floor(clamped * 255.0 + 0.5));
}

void write_png(const std::filesystem::path& path, const TensorF32& image) {
  if (image.channels() != 3) {
    throw std::invalid_argument(
        fmt::format("write_png: expected 3 channels, got {}", image.channels()));
  }
  std::vector<unsigned char> pixels(image.size());
  for (std::size_t i = 0; i < pixels.size(); ++i) pixels[i] = quantize_unit(image.data()[i]);

  png_image png;
  std::memset(&png, 0, sizeof(png));
  png.version = PNG_IMAGE_VERSION;
  png.width = static_cast<png_uint_32>(image.width());
  png.height = static_cast<png_uint_32>(image.height());
  png.format = PNG_FORMAT_RGB;
  if (!png_image_write_to_file(&png, path.string().c_str(), 0, pixels.data(), 0, nullptr)) {
    const std::string msg = png.message;
    png_image_free(&png);
    throw IoError(fmt::format("write_png '{}': {}", path.string(), msg));
  }
}

TensorF32 read_png(const std::filesystem::path& path) {
  png_image png;
  std::memset(&png, 0, sizeof(png));
  png.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&png, path.string().c_str())) {
    throw IoError(fmt::format("read_png '{}': {}", path.string(), png.message));
  }
  png.format = PNG_FORMAT_RGB;
  std::vector<unsigned char> pixels(PNG_IMAGE_SIZE(png));
  if (!png_image_finish_read(&png, nullptr, pixels.data(), 0, nullptr)) {
    const std::string msg = png.message;
    png_image_free(&png);
    throw IoError(fmt::format("read_png '{}': {}", path.string(), msg));
  }
  std::vector<float> data(pixels.size());
  for (std::size_t i = 0; i < pixels.size(); ++i) data[i] = pixels[i] / 255.0f;
  return TensorF32(static_cast<int>(png.height), static_cast<int>(png.width), 3, std::move(data));
}

}  // namespace hires
