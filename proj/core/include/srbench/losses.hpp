#pragma once

#include <optional>
#include <string_view>

#include "srbench/image.hpp"
#include "srbench/metrics.hpp"

namespace srbench {

enum class LossPreset { kOppo, kInceptionV1, kInceptionV2, kInceptionV3, kCustom };

// Weights of a three-term composite loss.
//
// For every mode except kOppo the terms are alpha*L1 + beta*(1 - MS-SSIM) +
// gamma*VGG, with the VGG value injected by the caller. kOppo reuses the
// third slot for the SSIM structure loss: alpha*L1 + beta*(1 - MS-SSIM) +
// gamma*(1 - SSIM).
struct LossWeights {
  double alpha = 1.0;
  double beta = 0.0;
  double gamma = 0.0;
  LossPreset mode = LossPreset::kCustom;

  static LossWeights preset(LossPreset preset);
};

LossPreset parse_loss_preset(std::string_view name);
const char* to_string(LossPreset preset);

// Pixel values are multiplied by `pixel_scale` before differencing
// (1 for the [0, 1] scale, 255 to compare with 8-bit training logs).
double l1_distance(const Image& x, const Image& y, double pixel_scale = 1.0);

double ssim_loss(const Image& x, const Image& y, const SsimConfig& cfg = {});
double ms_ssim_loss(const Image& x, const Image& y, const SsimConfig& cfg = {});

// Individual term values; a term that was not evaluated stays empty.
struct LossTerms {
  std::optional<double> l1;
  std::optional<double> ssim_loss;
  std::optional<double> ms_ssim_loss;
  std::optional<double> vgg;
};

// Weighted sum of precomputed terms. Any term with a non-zero weight must
// be present; a missing VGG value with gamma != 0 is kInvalidArgument.
double combine_loss_terms(const LossTerms& terms, const LossWeights& w);

// Evaluates only the terms that carry a non-zero weight, then combines them.
double composite_loss(const Image& x, const Image& y, const LossWeights& w,
                      std::optional<double> vgg_term = std::nullopt,
                      const SsimConfig& cfg = {});

// Terms needed by `w` (plus L1 always), evaluated on the pair.
LossTerms evaluate_loss_terms(const Image& x, const Image& y,
                              const LossWeights& w,
                              std::optional<double> vgg_term,
                              const SsimConfig& cfg = {});

}  // namespace srbench
