// Copyright 2026 The hires-diffuse Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

#include "hires/metrics.hpp"

namespace hires {
namespace {

TensorF32 wave_a() {
  TensorF32 t(32, 32, 3);
  for (int i = 0; i < 32; ++i)
    for (int j = 0; j < 32; ++j)
      for (int c = 0; c < 3; ++c) t.at(i, j, c) = static_cast<float>(0.5 + 0.4 * std::sin(0.3 * i + 0.2 * j + c));
  return t;
}

TensorF32 wave_b() {
  TensorF32 t(32, 32, 3);
  for (int i = 0; i < 32; ++i)
    for (int j = 0; j < 32; ++j)
      for (int c = 0; c < 3; ++c)
        t.at(i, j, c) = static_cast<float>(0.5 + 0.3 * std::cos(0.25 * i - 0.15 * j + 0.5 * c));
  return t;
}

TEST(PsnrTest, UniformOffsetClosedForm) {
  const TensorF32 a(8, 8, 3, 0.5f);
  const TensorF32 b(8, 8, 3, 0.25f);
  EXPECT_NEAR(psnr(a, b), 10.0 * std::log10(1.0 / 0.0625), 1e-9);
  EXPECT_NEAR(psnr(a, b, 255.0), 10.0 * std::log10(255.0 * 255.0 / 0.0625), 1e-9);
  const TensorF32 c(8, 8, 3, 0.6f);
  const double d = static_cast<double>(0.6f) - 0.5f;
  EXPECT_NEAR(psnr(a, c), -20.0 * std::log10(d), 1e-9);
  EXPECT_NEAR(psnr(a, c), 20.0, 1e-5);
  EXPECT_TRUE(std::isinf(psnr(a, a)));
  EXPECT_THROW(psnr(a, TensorF32(8, 8, 1)), std::invalid_argument);
}

TEST(SsimTest, IdentityIsOne) {
  const TensorF32 a = wave_a();
  EXPECT_NEAR(ssim(a, a), 1.0, 1e-9);
}

TEST(SsimTest, Symmetric) {
  EXPECT_NEAR(ssim(wave_a(), wave_b()), ssim(wave_b(), wave_a()), 1e-12);
}

// Reference values from scikit-image structural_similarity with Gaussian
// weights (sigma 1.5), population covariance and data_range 1.
TEST(SsimTest, MatchesReferenceFixture) {
  const TensorF32 a = wave_a();
  EXPECT_NEAR(ssim(a, wave_b()), 0.01462735374768277, 1e-6);
  TensorF32 inv = a;
  for (float& v : inv.data()) v = 1.0f - v;
  EXPECT_NEAR(ssim(a, inv), -0.6124504596610891, 1e-6);
}

TEST(PsnrTest, MaximalErrorAndSymmetry) {
  const TensorF32 zero(4, 4, 3, 0.0f);
  const TensorF32 one(4, 4, 3, 1.0f);
  EXPECT_NEAR(psnr(zero, one), 0.0, 1e-12);
  EXPECT_EQ(psnr(wave_a(), wave_b()), psnr(wave_b(), wave_a()));
}

TEST(SsimTest, ConstantImagesReduceToLuminanceTerm) {
  const TensorF32 a(16, 16, 1, 0.3f);
  const TensorF32 b(16, 16, 1, 0.35f);
  const double m1 = 0.3f, m2 = 0.35f, c1 = kSsimK1 * kSsimK1;
  EXPECT_NEAR(ssim(a, b), (2 * m1 * m2 + c1) / (m1 * m1 + m2 * m2 + c1), 1e-9);
}

TEST(SsimTest, Bounded) {
  const TensorF32 a = wave_a();
  TensorF32 inv = a;
  for (float& v : inv.data()) v = 1.0f - v;
  for (const TensorF32* b : {&a, static_cast<const TensorF32*>(&inv)}) {
    const double s = ssim(a, *b);
    EXPECT_GE(s, -1.0);
    EXPECT_LE(s, 1.0 + 1e-12);
  }
}

TEST(SsimTest, RejectsSmallImages) {
  EXPECT_THROW(ssim(TensorF32(10, 32, 3), TensorF32(10, 32, 3)), std::invalid_argument);
}

}  // namespace
}  // namespace hires
