// Copyright 2026 The hires-diffuse Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "hires/models.hpp"
#include "hires/rng.hpp"
#include "hires/tensor.hpp"

namespace hires {

struct CorpusImage {
  std::string id;
  TensorF32 image;  // H x W x 3, values in [0, 1]
};

/// Seeded synthetic corpus: Gaussian-blurred colour noise with a few solid
/// discs and rectangles on top, clipped to [0, 1]. Image i depends only on
/// (seed, i).
std::vector<CorpusImage> synthetic_corpus(int count, std::uint64_t seed, int size = 128);

/// Every *.png in `dir`, sorted by file name; ids are the file stems.
std::vector<CorpusImage> load_png_corpus(const std::filesystem::path& dir);

/// Fidelity of one upsampling variant against the autoencoder reconstruction.
struct MetricReport {
  std::string variant;  // "pix" or "lat"
  int scale = 1;        // r
  std::vector<std::string> ids;
  std::vector<double> psnr_db;
  std::vector<double> ssim;
  double mean_psnr_db = 0.0;
  double mean_ssim = 0.0;

  std::size_t size() const { return ids.size(); }
};

struct PilotResult {
  MetricReport pixel;
  MetricReport latent;
};

/// For each image x with reference ref = D(E(x)):
///   pix = up(D(E(down(x))))   -- upsampling in pixel space
///   lat = D(up(E(down(x))))   -- upsampling in latent space
/// with bicubic up/down by factor r, scored by PSNR (peak 1) and SSIM
/// against ref. Means are accumulated in corpus order, so the result does
/// not depend on `jobs`.
///
/// Throws std::invalid_argument on an empty corpus or an image whose sides
/// are not divisible by r * f.
PilotResult run_pilot_study(const std::vector<CorpusImage>& corpus, const Autoencoder& ae, int r,
                            int jobs = 1);

/// CSV with header image_id,variant,r,psnr_db,ssim: a pix row and a lat row
/// per image in corpus order, then the two image_id=ALL aggregate rows.
void write_pilot_csv(std::ostream& out, const PilotResult& result);
std::string pilot_csv(const PilotResult& result);

}  // namespace hires
