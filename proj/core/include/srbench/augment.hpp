#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "srbench/image.hpp"
#include "srbench/rng.hpp"

namespace srbench {

// Paired training augmentations. Every op acts on an (LR, HR) pair with
// HR = s * LR in both dimensions; rectangles are chosen on the LR grid and
// mapped to HR by multiplying by s, so the two sides stay aligned exactly.
//
//   cutout    LR rect zeroed (or filled with the LR channel means); HR kept
//   cutmix    partner rect pasted into both members
//   mixup     lambda*A + (1-lambda)*B on both members
//   cutmixup  M = mixup(A, B); "inside" pastes M's rect into A, "outside"
//             pastes A's rect into M
//   cutblur   "hr_to_lr": box-downsampled HR rect pasted into LR;
//             "lr_to_hr": nearest-upsampled LR rect pasted into HR
//   rgb_perm  output channel c = input channel permutation[c], both members
//   blend     lambda*x + (1-lambda)*color on both members
//   hflip, vflip, rot90 (clockwise)   applied to both members
enum class AugOp {
  kCutout,
  kCutMix,
  kMixup,
  kCutMixup,
  kCutBlur,
  kRgbPerm,
  kBlend,
  kHFlip,
  kVFlip,
  kRot90,
};

enum class CutBlurDirection { kRandom, kHrToLr, kLrToHr };
enum class CutMixupMode { kRandom, kInside, kOutside };
enum class CutoutFill { kZero, kMean };

struct AugSpec {
  AugOp op = AugOp::kHFlip;
  std::uint64_t seed = 0;

  // Weight of the primary image for mixup, cutmixup and blend; drawn from
  // U[0, 1] when absent.
  std::optional<double> lambda;

  // Explicit LR rectangle for rect ops. When absent, one is sampled with
  // area fraction `ratio` (see sample_rect).
  std::optional<Rect> rect;
  double ratio = 0.25;

  std::array<int, 3> permutation{0, 1, 2};
  bool random_permutation = false;

  // Blend colour; drawn uniformly per channel when absent.
  std::optional<std::array<double, 3>> color;

  CutBlurDirection direction = CutBlurDirection::kRandom;
  CutMixupMode mixup_mode = CutMixupMode::kRandom;
  CutoutFill fill = CutoutFill::kZero;

  // Range checks: lambda in [0, 1], ratio in (0, 1), permutation a
  // bijection, colour in [0, 1], rect with non-negative size.
  void validate() const;
};

struct ImagePair {
  Image lr;
  Image hr;
};

// Integer s with hr = s * lr; throws kDimensionMismatch otherwise.
int pair_scale(const ImagePair& pair);

bool needs_partner(AugOp op);
bool uses_rect(AugOp op);

// Rectangle of roughly ratio*h*w pixels: aspect a = 1+t for t >= 0 and
// 1/(1-t) for t < 0 with t ~ U[-1, 1); height = round(h*sqrt(ratio*a)),
// width = round(w*sqrt(ratio/a)), both clamped to [1, dim]; the position
// is uniform over all placements.
Rect sample_rect(int height, int width, double ratio, Rng& rng);

// Draws from `rng` in a fixed order (rect, lambda, colour, permutation,
// direction/mode) so a seed fully determines the result.
ImagePair augment_pair(const ImagePair& pair, const AugSpec& spec,
                       const ImagePair* partner, Rng& rng);

// Same, with a generator seeded from spec.seed.
ImagePair augment_pair(const ImagePair& pair, const AugSpec& spec,
                       const ImagePair* partner = nullptr);

AugOp parse_aug_op(std::string_view name);
const char* to_string(AugOp op);

// JSON spec (documented in the README). parse_aug_pipeline accepts either
// one spec object or an array of them. Malformed input is kConfig.
AugSpec parse_aug_spec(std::string_view json_text);
std::vector<AugSpec> parse_aug_pipeline(std::string_view json_text);
std::string to_json(const AugSpec& spec);

}  // namespace srbench
