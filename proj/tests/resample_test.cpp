// Copyright 2026 The hires-diffuse Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "hires/resample.hpp"

namespace hires {
namespace {

double keys(double x) {
  const double a = -0.5;
  x = std::abs(x);
  if (x <= 1.0) return (a + 2.0) * x * x * x - (a + 3.0) * x * x + 1.0;
  if (x < 2.0) return a * x * x * x - 5.0 * a * x * x + 8.0 * a * x - 4.0 * a;
  return 0.0;
}

// Direct 2-D cubic convolution: sums every source pixel within the kernel
// support with the product weight, clamping out-of-range sample positions.
TensorF32 direct_bicubic(const TensorF32& in, int oh, int ow) {
  TensorF32 out(oh, ow, in.channels());
  const double sy = static_cast<double>(in.height()) / oh;
  const double sx = static_cast<double>(in.width()) / ow;
  for (int y = 0; y < oh; ++y) {
    const double cy = (y + 0.5) * sy - 0.5;
    for (int x = 0; x < ow; ++x) {
      const double cx = (x + 0.5) * sx - 0.5;
      for (int c = 0; c < in.channels(); ++c) {
        double acc = 0.0;
        for (int j = static_cast<int>(std::floor(cy)) - 3; j <= static_cast<int>(std::floor(cy)) + 3; ++j) {
          const double wy = keys(cy - j);
          if (wy == 0.0) continue;
          const int jj = std::clamp(j, 0, in.height() - 1);
          for (int i = static_cast<int>(std::floor(cx)) - 3; i <= static_cast<int>(std::floor(cx)) + 3; ++i) {
            const double wx = keys(cx - i);
            if (wx == 0.0) continue;
            acc += wy * wx * in.at(jj, std::clamp(i, 0, in.width() - 1), c);
          }
        }
        out.at(y, x, c) = static_cast<float>(acc);
      }
    }
  }
  return out;
}

TensorF32 random_image(std::mt19937_64& gen, int h, int w, int c) {
  std::uniform_real_distribution<float> u(0.0f, 1.0f);
  TensorF32 t(h, w, c);
  for (float& v : t.data()) v = u(gen);
  return t;
}

TEST(CubicKernelTest, KnownValues) {
  EXPECT_DOUBLE_EQ(cubic_kernel(0.0), 1.0);
  EXPECT_DOUBLE_EQ(cubic_kernel(1.0), 0.0);
  EXPECT_DOUBLE_EQ(cubic_kernel(2.0), 0.0);
  EXPECT_DOUBLE_EQ(cubic_kernel(0.5), 0.5625);
  EXPECT_DOUBLE_EQ(cubic_kernel(1.5), -0.0625);
  EXPECT_DOUBLE_EQ(cubic_kernel(-1.5), cubic_kernel(1.5));
}

TEST(CubicKernelTest, PartitionOfUnity) {
  for (double f = 0.0; f < 1.0; f += 0.0625) {
    const double s = cubic_kernel(f + 1) + cubic_kernel(f) + cubic_kernel(1 - f) + cubic_kernel(2 - f);
    EXPECT_NEAR(s, 1.0, 1e-14);
  }
}

TEST(BicubicTest, MatchesDirectOracle) {
  std::mt19937_64 gen(11);
  for (const double scale : {0.5, 2.0, 3.0}) {
    for (int trial = 0; trial < 4; ++trial) {
      const int h = 6 + trial * 2;
      const int w = 8 + trial;
      const TensorF32 in = random_image(gen, h, w, 3);
      const int oh = static_cast<int>(h * scale);
      const int ow = static_cast<int>(w * scale);
      const TensorF32 got = bicubic_resample(in, {oh, ow});
      const TensorF32 want = direct_bicubic(in, oh, ow);
      for (std::size_t i = 0; i < got.size(); ++i) ASSERT_NEAR(got.values()[i], want.values()[i], 1e-5);
    }
  }
}

TEST(BicubicTest, IdentityAtSameSize) {
  std::mt19937_64 gen(3);
  const TensorF32 in = random_image(gen, 7, 5, 2);
  const TensorF32 out = bicubic_resample(in, in.shape());
  for (std::size_t i = 0; i < in.size(); ++i) EXPECT_NEAR(out.values()[i], in.values()[i], 1e-7);
}

TEST(BicubicTest, PreservesConstants) {
  const TensorF32 in(9, 4, 3, 0.37f);
  for (const Shape2D s : {Shape2D{3, 2}, Shape2D{18, 8}, Shape2D{27, 13}}) {
    const TensorF32 out = bicubic_resample(in, s);
    for (const float v : out.values()) EXPECT_NEAR(v, 0.37f, 1e-6);
  }
}

TEST(DownsampleTest, ShapeAndValidation) {
  const TensorF32 in(16, 12, 3, 0.5f);
  EXPECT_EQ(downsample(in, 4).shape(), Shape2D(4, 3));
  EXPECT_THROW(downsample(in, 0), std::invalid_argument);
  EXPECT_THROW(downsample(in, 13), std::invalid_argument);
}

}  // namespace
}  // namespace hires
