// Copyright 2026 The hires-diffuse Authors
// SPDX-License-Identifier: Apache-2.0

#include "hires/models.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

namespace hires {
namespace {

constexpr std::uint32_t kAutoencoderStream = 0xAE000000u;

// Orthonormal 2-D DCT-II row u evaluated at sample x.
double dct_basis(int u, int x, int n) {
  const double norm = u == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
  return norm * std::cos(std::numbers::pi * (2 * x + 1) * u / (2.0 * n));
}

// Luma, red-blue and green-magenta opponent axes, orthonormal.
const std::array<std::array<double, 3>, 3>& colour_basis() {
  static const std::array<std::array<double, 3>, 3> basis = {{
      {1.0 / std::sqrt(3.0), 1.0 / std::sqrt(3.0), 1.0 / std::sqrt(3.0)},
      {1.0 / std::sqrt(2.0), 0.0, -1.0 / std::sqrt(2.0)},
      {1.0 / std::sqrt(6.0), -2.0 / std::sqrt(6.0), 1.0 / std::sqrt(6.0)},
  }};
  return basis;
}

// Leading `count` patch basis vectors, each of length 3*f*f laid out as
// (row, col, channel) to match channel-last storage.
std::vector<double> patch_basis(int f, int count) {
  const int dim = 3 * f * f;
  std::vector<double> basis;
  basis.reserve(static_cast<std::size_t>(count) * dim);
  int produced = 0;
  for (int s = 0; s <= 2 * (f - 1) && produced < count; ++s) {
    for (int u = 0; u <= s && produced < count; ++u) {
      const int v = s - u;
      if (u >= f || v >= f) continue;
      for (int colour = 0; colour < 3 && produced < count; ++colour) {
        for (int y = 0; y < f; ++y) {
          for (int x = 0; x < f; ++x) {
            const double spatial = dct_basis(u, y, f) * dct_basis(v, x, f);
            for (int ch = 0; ch < 3; ++ch) basis.push_back(spatial * colour_basis()[colour][ch]);
          }
        }
        ++produced;
      }
    }
  }
  return basis;
}

}  // namespace

std::vector<double> random_orthogonal(int n, RngSeed seed) {
  if (n < 1) throw std::invalid_argument("random_orthogonal: n must be >= 1");
  NoiseStream stream(seed, kAutoencoderStream, static_cast<std::uint32_t>(n));
  std::vector<double> q(static_cast<std::size_t>(n) * n);
  for (double& v : q) v = stream.next_normal();
  // Modified Gram-Schmidt over rows, two passes for orthogonality to ~1e-15.
  for (int i = 0; i < n; ++i) {
    double* row = &q[static_cast<std::size_t>(i) * n];
    for (int pass = 0; pass < 2; ++pass) {
      for (int j = 0; j < i; ++j) {
        const double* prev = &q[static_cast<std::size_t>(j) * n];
        double dot = 0.0;
        for (int k = 0; k < n; ++k) dot += row[k] * prev[k];
        for (int k = 0; k < n; ++k) row[k] -= dot * prev[k];
      }
    }
    double norm = 0.0;
    for (int k = 0; k < n; ++k) norm += row[k] * row[k];
    norm = std::sqrt(norm);
    for (int k = 0; k < n; ++k) row[k] /= norm;
  }
  return q;
}

AnalyticGaussianDenoiser::AnalyticGaussianDenoiser(TensorF32 mu, double sigma2,
                                                   NoiseSchedule schedule)
    : mu_(std::move(mu)), sigma2_(sigma2), schedule_(std::move(schedule)) {
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) {
    throw std::invalid_argument(fmt::format("analytic denoiser: sigma2 must be > 0, got {}", sigma2));
  }
  require_finite(mu_, "analytic denoiser mu");
  schedule_.validate();
}

TensorF32 AnalyticGaussianDenoiser::predict_noise(const TensorF32& z_t, int t,
                                                  const ConditioningTag& /*cond*/) const {
  if (t < 0 || t > schedule_.total_steps) {
    throw std::out_of_range(fmt::format("analytic denoiser: step {} outside schedule", t));
  }
  const bool broadcast = mu_.height() == 1 && mu_.width() == 1;
  if (mu_.channels() != z_t.channels() || (!broadcast && !mu_.same_shape(z_t))) {
    throw std::invalid_argument("analytic denoiser: mu does not match the latent shape");
  }
  const double ab = schedule_.alpha_bar[t];
  const double a = std::sqrt(ab);
  const double b = std::sqrt(1.0 - ab);
  const double gain = b / (ab * sigma2_ + (1.0 - ab));
  const auto c = static_cast<std::size_t>(z_t.channels());

  TensorF32 eps(z_t.height(), z_t.width(), z_t.channels());
  auto z = z_t.data();
  auto m = mu_.data();
  auto out = eps.data();
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double mean = broadcast ? m[i % c] : m[i];
    out[i] = static_cast<float>((z[i] - a * mean) * gain);
  }
  return eps;
}

OrthogonalPatchAutoencoder::OrthogonalPatchAutoencoder(int f, int c, RngSeed seed) : f_(f), c_(c) {
  if (f < 1) throw std::invalid_argument("patch autoencoder: f must be >= 1");
  const int dim = 3 * f * f;
  if (c < 1 || c > dim) {
    throw std::invalid_argument(
        fmt::format("patch autoencoder: channels must lie in [1, {}], got {}", dim, c));
  }
  const auto basis = patch_basis(f, c);
  const auto mix = random_orthogonal(c, seed);
  matrix_.assign(static_cast<std::size_t>(c) * dim, 0.0);
  for (int k = 0; k < c; ++k) {
    for (int j = 0; j < c; ++j) {
      const double w = mix[static_cast<std::size_t>(k) * c + j];
      const double* src = &basis[static_cast<std::size_t>(j) * dim];
      double* dst = &matrix_[static_cast<std::size_t>(k) * dim];
      for (int d = 0; d < dim; ++d) dst[d] += w * src[d];
    }
  }
}

TensorF32 OrthogonalPatchAutoencoder::encode(const TensorF32& image) const {
  require_finite(image, "encode");
  if (image.channels() != 3) {
    throw std::invalid_argument(fmt::format("encode: expected 3 channels, got {}", image.channels()));
  }
  if (image.height() % f_ != 0 || image.width() % f_ != 0) {
    throw std::invalid_argument(fmt::format("encode: image {}x{} is not divisible by f = {}",
                                            image.height(), image.width(), f_));
  }
  const int dim = 3 * f_ * f_;
  TensorF32 latent(image.height() / f_, image.width() / f_, c_);
  std::vector<double> patch(dim);
  for (int py = 0; py < latent.height(); ++py) {
    for (int px = 0; px < latent.width(); ++px) {
      std::size_t j = 0;
      for (int y = 0; y < f_; ++y) {
        for (int x = 0; x < f_; ++x) {
          for (int ch = 0; ch < 3; ++ch) patch[j++] = image.at(py * f_ + y, px * f_ + x, ch);
        }
      }
      for (int k = 0; k < c_; ++k) {
        const double* row = &matrix_[static_cast<std::size_t>(k) * dim];
        double acc = 0.0;
        for (int d = 0; d < dim; ++d) acc += row[d] * patch[d];
        latent.at(py, px, k) = static_cast<float>(acc);
      }
    }
  }
  return latent;
}

TensorF32 OrthogonalPatchAutoencoder::decode(const TensorF32& latent) const {
  require_finite(latent, "decode");
  if (latent.channels() != c_) {
    throw std::invalid_argument(
        fmt::format("decode: expected {} channels, got {}", c_, latent.channels()));
  }
  const int dim = 3 * f_ * f_;
  TensorF32 image(latent.height() * f_, latent.width() * f_, 3);
  std::vector<double> patch(dim);
  for (int py = 0; py < latent.height(); ++py) {
    for (int px = 0; px < latent.width(); ++px) {
      std::fill(patch.begin(), patch.end(), 0.0);
      for (int k = 0; k < c_; ++k) {
        const double coeff = latent.at(py, px, k);
        const double* row = &matrix_[static_cast<std::size_t>(k) * dim];
        for (int d = 0; d < dim; ++d) patch[d] += coeff * row[d];
      }
      std::size_t j = 0;
      for (int y = 0; y < f_; ++y) {
        for (int x = 0; x < f_; ++x) {
          for (int ch = 0; ch < 3; ++ch) {
            image.at(py * f_ + y, px * f_ + x, ch) = static_cast<float>(patch[j++]);
          }
        }
      }
    }
  }
  return image;
}

}  // namespace hires
