#pragma once

#include <vector>

#include "srbench/image.hpp"

namespace srbench {

// Detail subbands produced by one analysis stage.
struct HaarStage {
  int input_height = 0;  // size of the raster this stage decomposed
  int input_width = 0;
  Raster lh;  // horizontal detail: (a - b + c - d) / 2
  Raster hl;  // vertical detail:   (a + b - c - d) / 2
  Raster hh;  // diagonal detail:   (a - b - c + d) / 2
  Raster ll;  // low band after this stage: (a + b + c + d) / 2
};

// Multi-stage orthonormal 2-D Haar decomposition. stages[i].ll of the last
// stage is the coarsest approximation; earlier ll bands are kept because the
// wavelet loss compares every stage's low band.
struct WaveletPyramid {
  std::vector<HaarStage> stages;

  const Raster& final_ll() const { return stages.back().ll; }
};

// Each stage halves the size (ceil) of the previous low band. An odd
// dimension is extended by repeating its last row/column before pairing.
// Requires stages >= 1 and min(H, W) >= 2^stages.
WaveletPyramid haar_analyze(const Raster& plane, int stages);

// Inverse of haar_analyze; only the last stage's ll is read. Throws
// kDimensionMismatch if band sizes are inconsistent with the recorded
// input sizes.
Raster haar_synthesize(const WaveletPyramid& pyramid);

enum class LossNormalization {
  kSum,   // raw coefficient sums
  kMean,  // each sum divided by its coefficient count
};

struct WaveletLossOptions {
  int stages = 2;
  double lambda = 1.0;
  double pixel_scale = 1.0;  // 255.0 to evaluate on the 8-bit scale
};

struct WaveletLossTerms {
  double l1 = 0.0;    // sum |x - y| over pixels
  double high = 0.0;  // sum over stages of L1 on LH, HL, HH
  double low = 0.0;   // sum over stages of squared L2 on the stage low band
  double total = 0.0; // l1 + lambda * (low + high)
};

struct WaveletLoss {
  WaveletLossTerms raw;
  WaveletLossTerms mean;  // per-coefficient normalized counterpart
};

WaveletLoss wavelet_loss(const Raster& x, const Raster& y,
                         const WaveletLossOptions& options = {});

// Per-channel loss summed over R, G, B.
WaveletLoss wavelet_loss(const Image& x, const Image& y,
                         const WaveletLossOptions& options = {});

}  // namespace srbench
