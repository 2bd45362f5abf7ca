#include "srbench/losses.hpp"

#include <cmath>
#include <string>

#include "srbench/error.hpp"

namespace srbench {

namespace {

double require_term(const std::optional<double>& term, const char* name) {
  if (!term) {
    throw Error(ErrorKind::kInvalidArgument,
                std::string("composite loss needs the ") + name +
                    " term but it was not supplied");
  }
  return *term;
}

}  // namespace

LossWeights LossWeights::preset(LossPreset preset) {
  switch (preset) {
    case LossPreset::kOppo: return {1.0, 0.2, 0.2, preset};
    case LossPreset::kInceptionV1: return {1.0, 0.0, 0.0, preset};
    case LossPreset::kInceptionV2: return {0.16, 0.84, 0.0, preset};
    case LossPreset::kInceptionV3: return {0.01, 0.84, 0.15, preset};
    case LossPreset::kCustom: break;
  }
  return {};
}

LossPreset parse_loss_preset(std::string_view name) {
  if (name == "oppo") return LossPreset::kOppo;
  if (name == "inception_v1") return LossPreset::kInceptionV1;
  if (name == "inception_v2") return LossPreset::kInceptionV2;
  if (name == "inception_v3") return LossPreset::kInceptionV3;
  if (name == "custom") return LossPreset::kCustom;
  throw Error(ErrorKind::kInvalidArgument,
              "unknown loss preset '" + std::string(name) + "'");
}

const char* to_string(LossPreset preset) {
  switch (preset) {
    case LossPreset::kOppo: return "oppo";
    case LossPreset::kInceptionV1: return "inception_v1";
    case LossPreset::kInceptionV2: return "inception_v2";
    case LossPreset::kInceptionV3: return "inception_v3";
    case LossPreset::kCustom: return "custom";
  }
  return "custom";
}

double l1_distance(const Image& x, const Image& y, double pixel_scale) {
  require_same_dims(x, y, "l1_distance");
  const auto a = x.data();
  const auto b = y.data();
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
  return sum * pixel_scale / static_cast<double>(a.size());
}

double ssim_loss(const Image& x, const Image& y, const SsimConfig& cfg) {
  return 1.0 - ssim(x, y, cfg);
}

double ms_ssim_loss(const Image& x, const Image& y, const SsimConfig& cfg) {
  return 1.0 - ms_ssim(x, y, cfg);
}

double combine_loss_terms(const LossTerms& terms, const LossWeights& w) {
  double total = 0.0;
  if (w.alpha != 0.0) total += w.alpha * require_term(terms.l1, "L1");
  if (w.beta != 0.0) total += w.beta * require_term(terms.ms_ssim_loss, "MS-SSIM");
  if (w.gamma != 0.0) {
    if (w.mode == LossPreset::kOppo) {
      total += w.gamma * require_term(terms.ssim_loss, "SSIM");
    } else {
      total += w.gamma * require_term(terms.vgg, "VGG");
    }
  }
  return total;
}

LossTerms evaluate_loss_terms(const Image& x, const Image& y,
                              const LossWeights& w,
                              std::optional<double> vgg_term,
                              const SsimConfig& cfg) {
  require_same_dims(x, y, "composite_loss");
  if (w.mode != LossPreset::kOppo && w.gamma != 0.0 && !vgg_term) {
    throw Error(ErrorKind::kInvalidArgument,
                "gamma is non-zero but no VGG term was supplied");
  }
  LossTerms terms;
  terms.l1 = l1_distance(x, y);
  if (w.beta != 0.0) terms.ms_ssim_loss = ms_ssim_loss(x, y, cfg);
  if (w.mode == LossPreset::kOppo && w.gamma != 0.0) {
    terms.ssim_loss = ssim_loss(x, y, cfg);
  }
  terms.vgg = vgg_term;
  return terms;
}

double composite_loss(const Image& x, const Image& y, const LossWeights& w,
                      std::optional<double> vgg_term, const SsimConfig& cfg) {
  return combine_loss_terms(evaluate_loss_terms(x, y, w, vgg_term, cfg), w);
}

}  // namespace srbench
