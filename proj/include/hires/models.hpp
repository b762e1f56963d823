// Copyright 2026 The hires-diffuse Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "hires/noise_schedule.hpp"
#include "hires/rng.hpp"
#include "hires/tensor.hpp"

namespace hires {

enum class Branch { kUnconditional, kConditional };

/// Selects the classifier-free-guidance branch plus an integer label for toy
/// conditioning.
struct ConditioningTag {
  Branch branch = Branch::kUnconditional;
  int label = 0;

  static ConditioningTag unconditional() { return {Branch::kUnconditional, 0}; }
  static ConditioningTag conditional(int label) { return {Branch::kConditional, label}; }

  friend bool operator==(const ConditioningTag&, const ConditioningTag&) = default;
};

/// Noise-prediction network eps(z_t, t). Implementations must be immutable
/// after construction and safe for concurrent calls.
class Denoiser {
 public:
  virtual ~Denoiser() = default;
  /// Shape-preserving; output finite.
  virtual TensorF32 predict_noise(const TensorF32& z_t, int t,
                                  const ConditioningTag& cond) const = 0;
};

/// Pixel <-> latent codec. encode maps (H, W, 3) to (H/f, W/f, c).
class Autoencoder {
 public:
  virtual ~Autoencoder() = default;
  virtual TensorF32 encode(const TensorF32& image) const = 0;
  virtual TensorF32 decode(const TensorF32& latent) const = 0;
  virtual int spatial_factor() const = 0;
  virtual int latent_channels() const = 0;
};

/// Bayes-optimal noise predictor for data drawn from N(mu, sigma2 * I).
///
/// With z_t = a*z0 + b*eps (a = sqrt(ab_t), b = sqrt(1 - ab_t)) the posterior
/// mean of eps is (z_t - a*mu) * b / (a^2*sigma2 + b^2). mu is either a full
/// latent-shaped tensor or a 1x1xc tensor broadcast over every cell. The
/// conditioning tag is ignored: the prior is unconditional.
class AnalyticGaussianDenoiser final : public Denoiser {
 public:
  AnalyticGaussianDenoiser(TensorF32 mu, double sigma2, NoiseSchedule schedule);

  TensorF32 predict_noise(const TensorF32& z_t, int t, const ConditioningTag& cond) const override;

  const TensorF32& mu() const { return mu_; }
  double sigma2() const { return sigma2_; }

 private:
  TensorF32 mu_;
  double sigma2_;
  NoiseSchedule schedule_;
};

/// Linear stand-in for a VAE built from non-overlapping f x f patches.
///
/// Each RGB patch (3*f*f values) is expanded in a fixed orthonormal basis:
/// the separable 2-D DCT-II in space times an orthonormal luma/chroma
/// transform in colour, ordered from low to high spatial frequency with luma
/// first at each frequency. The leading c coefficients are kept and mixed by
/// a seeded random c x c orthogonal matrix. decode applies the transpose.
///
/// With c == 3*f*f the map is orthogonal and decode(encode(x)) == x up to
/// float rounding; smaller c is an orthogonal projection onto the c lowest
/// frequencies.
class OrthogonalPatchAutoencoder final : public Autoencoder {
 public:
  OrthogonalPatchAutoencoder(int f, int c, RngSeed seed);

  TensorF32 encode(const TensorF32& image) const override;
  TensorF32 decode(const TensorF32& latent) const override;
  int spatial_factor() const override { return f_; }
  int latent_channels() const override { return c_; }

  /// Row-major c x (3*f*f) encoder matrix (rows orthonormal).
  const std::vector<double>& encoder_matrix() const { return matrix_; }

 private:
  int f_;
  int c_;
  std::vector<double> matrix_;
};

/// Orthonormal n x n matrix from Gram-Schmidt on a seeded Gaussian matrix.
std::vector<double> random_orthogonal(int n, RngSeed seed);

}  // namespace hires
