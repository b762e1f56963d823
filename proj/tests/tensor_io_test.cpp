// Copyright 2026 The hires-diffuse Authors
// SPDX-License-Identifier: Apache-2.0

#include <bit>
#include <cstdint>
#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>

#include "hires/tensor_io.hpp"

namespace hires {
namespace {

std::filesystem::path tmp_dir() {
  const std::filesystem::path dir = std::filesystem::path(HIRES_TEST_TMP) / "tensor_io";
  std::filesystem::create_directories(dir);
  return dir;
}

TEST(Tf32Test, StreamRoundTripIsBitExact) {
  TensorF32 t(3, 2, 5);
  for (std::size_t i = 0; i < t.size(); ++i) t.data()[i] = static_cast<float>(i) * -0.1f + 1e-30f;
  t.at(0, 0, 0) = -0.0f;
  std::stringstream buf;
  write_tf32(buf, t);
  EXPECT_EQ(buf.str().size(), 16u + 4u * t.size());
  EXPECT_TRUE(bitwise_equal(read_tf32(buf), t));
}

TEST(Tf32Test, HeaderIsLittleEndian) {
  std::stringstream buf;
  write_tf32(buf, TensorF32(1, 2, 3, 1.0f));
  const std::string s = buf.str();
  EXPECT_EQ(s.substr(0, 4), "TF32");
  EXPECT_EQ(static_cast<unsigned char>(s[4]), 1);
  EXPECT_EQ(static_cast<unsigned char>(s[8]), 2);
  EXPECT_EQ(static_cast<unsigned char>(s[12]), 3);
  const std::uint32_t one = std::bit_cast<std::uint32_t>(1.0f);
  EXPECT_EQ(static_cast<unsigned char>(s[16]), one & 0xffu);
  EXPECT_EQ(static_cast<unsigned char>(s[19]), one >> 24);
}

TEST(Tf32Test, RejectsCorruptInput) {
  std::stringstream bad_magic("XXXX");
  EXPECT_THROW(read_tf32(bad_magic), IoError);
  std::stringstream buf;
  write_tf32(buf, TensorF32(2, 2, 2, 0.5f));
  std::string s = buf.str();
  std::stringstream truncated(s.substr(0, s.size() - 1));
  EXPECT_THROW(read_tf32(truncated), IoError);
  const std::uint32_t nan = 0x7fc00000u;
  for (int b = 0; b < 4; ++b) s[16 + b] = static_cast<char>((nan >> (8 * b)) & 0xffu);
  std::stringstream with_nan(s);
  EXPECT_THROW(read_tf32(with_nan), IoError);
}

TEST(Tf32Test, FileRoundTrip) {
  const auto path = tmp_dir() / "a.tf32";
  const TensorF32 t(4, 4, 1, 0.25f);
  write_tf32(path, t);
  EXPECT_TRUE(bitwise_equal(read_tf32(path), t));
  EXPECT_THROW(read_tf32(tmp_dir() / "missing.tf32"), IoError);
}

TEST(PngTest, QuantizeClampsAndRounds) {
  EXPECT_EQ(quantize_unit(-1.0f), 0);
  EXPECT_EQ(quantize_unit(2.0f), 255);
  EXPECT_EQ(quantize_unit(0.5f), 128);
  EXPECT_EQ(quantize_unit(1.0f / 255.0f), 1);
}

TEST(PngTest, RoundTripOnQuantizedValues) {
  TensorF32 img(5, 7, 3);
  for (std::size_t i = 0; i < img.size(); ++i) {
    img.data()[i] = static_cast<float>((i * 37) % 256) / 255.0f;
  }
  const auto path = tmp_dir() / "img.png";
  write_png(path, img);
  const TensorF32 back = read_png(path);
  ASSERT_TRUE(back.same_shape(img));
  for (std::size_t i = 0; i < img.size(); ++i) EXPECT_NEAR(back.values()[i], img.values()[i], 1e-7);
  EXPECT_THROW(write_png(path, TensorF32(2, 2, 4)), std::invalid_argument);
}

}  // namespace
}  // namespace hires
