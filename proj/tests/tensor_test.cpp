// Copyright 2026 The hires-diffuse Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <limits>
#include <stdexcept>

#include <gtest/gtest.h>

#include "hires/tensor.hpp"

namespace hires {
namespace {

TEST(Shape2DTest, RejectsNonPositive) {
  EXPECT_THROW(Shape2D(0, 4), std::invalid_argument);
  EXPECT_THROW(Shape2D(4, -1), std::invalid_argument);
  EXPECT_EQ(Shape2D(3, 5).area(), 15);
}

TEST(Shape2DTest, ParseRoundTrip) {
  const Shape2D s = parse_shape("1024x2048");
  EXPECT_EQ(s, Shape2D(1024, 2048));
  EXPECT_EQ(s.to_string(), "1024x2048");
  EXPECT_THROW(parse_shape("1024"), std::invalid_argument);
  EXPECT_THROW(parse_shape("0x8"), std::invalid_argument);
  EXPECT_THROW(parse_shape("8x8x"), std::invalid_argument);
  EXPECT_THROW(parse_shape("axb"), std::invalid_argument);
}

TEST(TensorTest, LayoutIsRowColChannel) {
  TensorF32 t(2, 3, 4);
  EXPECT_EQ(t.size(), 24u);
  EXPECT_EQ(t.index(1, 2, 3), 23u);
  EXPECT_EQ(t.index(0, 1, 0), 4u);
  t.at(1, 0, 2) = 7.0f;
  EXPECT_EQ(t.values()[t.index(1, 0, 2)], 7.0f);
}

TEST(TensorTest, RejectsBadConstruction) {
  EXPECT_THROW(TensorF32(0, 1, 1), std::invalid_argument);
  EXPECT_THROW(TensorF32(1, 1, 2, std::vector<float>{1.0f}), std::invalid_argument);
  EXPECT_THROW(TensorF32(1, 1, 1, std::numeric_limits<float>::quiet_NaN()), std::invalid_argument);
  EXPECT_THROW(TensorF32(1, 1, 1, std::vector<float>{INFINITY}), std::invalid_argument);
}

TEST(TensorTest, FlattenUnflattenRoundTrip) {
  std::vector<float> v(2 * 3 * 2);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<float>(i) * 0.5f;
  const TensorF32 t(2, 3, 2, v);
  const Matrix m = flatten(t);
  EXPECT_EQ(m.rows, 6u);
  EXPECT_EQ(m.cols, 2u);
  EXPECT_EQ(m(4, 1), t.at(1, 1, 1));
  EXPECT_TRUE(bitwise_equal(unflatten(m, 2, 3), t));
  EXPECT_THROW(unflatten(m, 4, 2), std::invalid_argument);
}

TEST(TensorTest, BitwiseEqualDistinguishesSignedZero) {
  const TensorF32 a(1, 1, 1, 0.0f);
  const TensorF32 b(1, 1, 1, -0.0f);
  EXPECT_FALSE(bitwise_equal(a, b));
  EXPECT_TRUE(bitwise_equal(a, a));
  EXPECT_FALSE(bitwise_equal(a, TensorF32(1, 1, 2, 0.0f)));
}

TEST(TensorTest, RequireHelpers) {
  EXPECT_THROW(require_finite(TensorF32{}, "x"), std::invalid_argument);
  EXPECT_NO_THROW(require_finite(TensorF32(1, 1, 1), "x"));
  EXPECT_THROW(require_same_shape(TensorF32(1, 2, 1), TensorF32(2, 1, 1), "x"),
               std::invalid_argument);
  const std::vector<float> bad{1.0f, std::numeric_limits<float>::infinity()};
  EXPECT_FALSE(all_finite(bad));
}

}  // namespace
}  // namespace hires
