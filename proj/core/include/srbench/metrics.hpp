#pragma once

#include <limits>
#include <vector>

#include "srbench/image.hpp"

namespace srbench {

// Windowed SSIM parameters. Defaults are the canonical reference values:
// 11x11 Gaussian with sigma 1.5, K1 = 0.01, K2 = 0.03, L = 255 and the five
// standard MS-SSIM scale weights.
struct SsimConfig {
  int window_size = 11;
  double sigma = 1.5;
  double k1 = 0.01;
  double k2 = 0.03;
  double dynamic_range = 255.0;
  std::vector<double> ms_weights{0.0448, 0.2856, 0.3001, 0.2363, 0.1333};

  // Throws kInvalidArgument on a non-positive/even window, non-positive
  // sigma or range, or ms_weights that are empty, negative or do not sum
  // to 1 (within 1e-3; the canonical weights sum to 1.0001).
  void validate() const;

  // Normalized 1-D Gaussian taps; the 2-D window is their outer product.
  std::vector<double> gaussian_taps() const;
};

inline constexpr double kPsnrInfinity = std::numeric_limits<double>::infinity();

// PSNR over all 3*H*W samples at 8-bit scale: 10*log10(255^2 / MSE).
// Identical images return kPsnrInfinity.
double psnr_rgb(const Image& sr, const Image& hr);

// Mean SSIM over the valid-window map of each channel, averaged over R,G,B.
// Requires min(H, W) >= window_size.
double ssim(const Image& sr, const Image& hr, const SsimConfig& cfg = {});

// Per-scale SSIM statistics of one channel pair: means of the full SSIM map
// and of the contrast-structure map.
struct SsimTerms {
  double ssim = 0.0;
  double cs = 0.0;
};
SsimTerms ssim_terms(const Raster& a, const Raster& b, const SsimConfig& cfg);

// Smallest min(H, W) that ms_ssim accepts for the configured scale count.
int ms_ssim_min_size(const SsimConfig& cfg = {});

// Multi-scale SSIM, product form: mean contrast-structure at scales
// 1..n-1 and mean SSIM at scale n, each raised to its weight. Scales are
// produced by 2x2 average pooling (odd trailing rows/columns dropped).
// Negative terms are clamped to 0 before exponentiation. Computed per
// channel, then averaged.
double ms_ssim(const Image& sr, const Image& hr, const SsimConfig& cfg = {});

// 2x2 average pooling of one plane; odd trailing row/column dropped.
Raster average_pool2(const Raster& r);

enum class ScoreMode {
  kMean,  // 0.5*(psnr/50 + (ssim-0.4)/0.6), reproduces published scores
  kSum,   // psnr/50 + (ssim-0.4)/0.6 as a bare formula
};

double challenge_score(double psnr_avg, double ssim_avg,
                       ScoreMode mode = ScoreMode::kMean);

}  // namespace srbench
