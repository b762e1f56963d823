// Copyright 2026 The hires-diffuse Authors
// SPDX-License-Identifier: Apache-2.0

#include "hires/pilot.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

#include "hires/metrics.hpp"
#include "hires/resample.hpp"
#include "hires/tensor_io.hpp"

namespace hires {
namespace {

constexpr std::uint32_t kCorpusStream = 0xC0C0u;

std::vector<double> gaussian_taps(double sigma) {
  const int radius = std::max(1, static_cast<int>(std::ceil(4.0 * sigma)));
  std::vector<double> taps(2 * radius + 1);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    taps[i + radius] = std::exp(-0.5 * i * i / (sigma * sigma));
    sum += taps[i + radius];
  }
  for (double& t : taps) t /= sum;
  return taps;
}

// Separable blur of an n x n x 3 plane with edge clamping.
std::vector<double> blur(const std::vector<double>& src, int n, double sigma_y, double sigma_x) {
  const auto ty = gaussian_taps(sigma_y);
  const auto tx = gaussian_taps(sigma_x);
  const int ry = static_cast<int>(ty.size()) / 2;
  const int rx = static_cast<int>(tx.size()) / 2;
  std::vector<double> tmp(src.size(), 0.0);
  std::vector<double> out(src.size(), 0.0);
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      for (int k = -rx; k <= rx; ++k) {
        const int xs = std::clamp(x + k, 0, n - 1);
        for (int c = 0; c < 3; ++c) tmp[(y * n + x) * 3 + c] += tx[k + rx] * src[(y * n + xs) * 3 + c];
      }
    }
  }
  for (int y = 0; y < n; ++y) {
    for (int k = -ry; k <= ry; ++k) {
      const int ys = std::clamp(y + k, 0, n - 1);
      for (int x = 0; x < n; ++x) {
        for (int c = 0; c < 3; ++c) out[(y * n + x) * 3 + c] += ty[k + ry] * tmp[(ys * n + x) * 3 + c];
      }
    }
  }
  return out;
}

TensorF32 synthetic_image(std::uint64_t seed, int index, int n) {
  NoiseStream rng(RngSeed{seed}, static_cast<std::uint32_t>(index), kCorpusStream);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * rng.next_uniform(); };

  const double sigma_y = uniform(1.0, 4.0);
  const double sigma_x = uniform(1.0, 4.0);
  std::vector<double> noise(static_cast<std::size_t>(n) * n * 3);
  for (double& v : noise) v = rng.next_normal();
  auto pixels = blur(noise, n, sigma_y, sigma_x);

  double mean = 0.0;
  for (double v : pixels) mean += v;
  mean /= static_cast<double>(pixels.size());
  double var = 0.0;
  for (double v : pixels) var += (v - mean) * (v - mean);
  const double stddev = std::sqrt(var / static_cast<double>(pixels.size()));
  for (double& v : pixels) v = (v - mean) / stddev * 0.15 + 0.5;

  const double unit = n / 128.0;
  for (int s = 0; s < 3; ++s) {
    const bool disc = rng.next_uniform() < 0.5;
    const double cy = uniform(0.0, n);
    const double cx = uniform(0.0, n);
    const double ext_y = uniform(8.0, 30.0) * unit;
    const double ext_x = disc ? ext_y : uniform(8.0, 30.0) * unit;
    const std::array<double, 3> colour = {uniform(0.0, 1.0), uniform(0.0, 1.0), uniform(0.0, 1.0)};
    for (int y = 0; y < n; ++y) {
      for (int x = 0; x < n; ++x) {
        const double dy = (y - cy) / ext_y;
        const double dx = (x - cx) / ext_x;
        const bool inside = disc ? dy * dy + dx * dx < 1.0 : std::abs(dy) < 1.0 && std::abs(dx) < 1.0;
        if (!inside) continue;
        for (int c = 0; c < 3; ++c) pixels[(y * n + x) * 3 + c] = colour[c];
      }
    }
  }

  std::vector<float> data(pixels.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    data[i] = static_cast<float>(std::clamp(pixels[i], 0.0, 1.0));
  }
  return TensorF32(n, n, 3, std::move(data));
}

double ordered_mean(const std::vector<double>& values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

std::string format_metric(double v, int precision) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.{}f}", v, precision);
}

}  // namespace

std::vector<CorpusImage> synthetic_corpus(int count, std::uint64_t seed, int size) {
  if (count < 1) throw std::invalid_argument("synthetic corpus: count must be >= 1");
  if (size < 16) throw std::invalid_argument("synthetic corpus: size must be >= 16");
  std::vector<CorpusImage> corpus;
  corpus.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    corpus.push_back({fmt::format("synthetic_{:04d}", i), synthetic_image(seed, i, size)});
  }
  return corpus;
}

std::vector<CorpusImage> load_png_corpus(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw IoError(fmt::format("corpus directory '{}' does not exist", dir.string()));
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    auto ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char ch) { return std::tolower(ch); });
    if (entry.is_regular_file() && ext == ".png") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<CorpusImage> corpus;
  for (const auto& file : files) corpus.push_back({file.stem().string(), read_png(file)});
  return corpus;
}

PilotResult run_pilot_study(const std::vector<CorpusImage>& corpus, const Autoencoder& ae, int r,
                            int jobs) {
  if (corpus.empty()) throw std::invalid_argument("pilot study: corpus is empty");
  if (r < 1) throw std::invalid_argument("pilot study: r must be >= 1");
  const int f = ae.spatial_factor();
  for (const auto& item : corpus) {
    const auto& x = item.image;
    if (x.channels() != 3 || x.height() % (r * f) != 0 || x.width() % (r * f) != 0) {
      throw std::invalid_argument(fmt::format(
          "pilot study: image '{}' ({}x{}x{}) must be RGB with sides divisible by r*f = {}",
          item.id, x.height(), x.width(), x.channels(), r * f));
    }
  }

  const std::size_t n = corpus.size();
  PilotResult result;
  result.pixel.variant = "pix";
  result.latent.variant = "lat";
  for (MetricReport* report : {&result.pixel, &result.latent}) {
    report->scale = r;
    report->psnr_db.assign(n, 0.0);
    report->ssim.assign(n, 0.0);
    for (const auto& item : corpus) report->ids.push_back(item.id);
  }

  auto score = [&](std::size_t i) {
    const TensorF32& x = corpus[i].image;
    const Shape2D full = x.shape();
    const TensorF32 ref = ae.decode(ae.encode(x));
    const TensorF32 code = ae.encode(downsample(x, r));
    const TensorF32 pix = bicubic_resample(ae.decode(code), full);
    const TensorF32 lat = ae.decode(bicubic_resample(code, Shape2D(full.height / f, full.width / f)));
    result.pixel.psnr_db[i] = psnr(pix, ref);
    result.pixel.ssim[i] = ssim(pix, ref);
    result.latent.psnr_db[i] = psnr(lat, ref);
    result.latent.ssim[i] = ssim(lat, ref);
  };

  const int workers = std::clamp(jobs, 1, static_cast<int>(n));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) score(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            score(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
  }

  for (MetricReport* report : {&result.pixel, &result.latent}) {
    report->mean_psnr_db = ordered_mean(report->psnr_db);
    report->mean_ssim = ordered_mean(report->ssim);
  }
  return result;
}

void write_pilot_csv(std::ostream& out, const PilotResult& result) {
  out << "image_id,variant,r,psnr_db,ssim\n";
  const MetricReport& pix = result.pixel;
  const MetricReport& lat = result.latent;
  for (std::size_t i = 0; i < pix.size(); ++i) {
    for (const MetricReport* report : {&pix, &lat}) {
      out << report->ids[i] << ',' << report->variant << ',' << report->scale << ','
          << format_metric(report->psnr_db[i], 6) << ',' << format_metric(report->ssim[i], 8) << '\n';
    }
  }
  for (const MetricReport* report : {&pix, &lat}) {
    out << "ALL," << report->variant << ',' << report->scale << ','
        << format_metric(report->mean_psnr_db, 6) << ',' << format_metric(report->mean_ssim, 8)
        << '\n';
  }
}

std::string pilot_csv(const PilotResult& result) {
  std::ostringstream out;
  write_pilot_csv(out, result);
  return out.str();
}

}  // namespace hires
