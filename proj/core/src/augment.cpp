#include "srbench/augment.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <json.hpp>

#include "srbench/error.hpp"
#include "srbench/transform.hpp"

namespace srbench {

namespace {

using nlohmann::json;

struct OpName {
  AugOp op;
  const char* name;
};

constexpr OpName kOpNames[] = {
    {AugOp::kCutout, "cutout"},     {AugOp::kCutMix, "cutmix"},
    {AugOp::kMixup, "mixup"},       {AugOp::kCutMixup, "cutmixup"},
    {AugOp::kCutBlur, "cutblur"},   {AugOp::kRgbPerm, "rgb_perm"},
    {AugOp::kBlend, "blend"},       {AugOp::kHFlip, "hflip"},
    {AugOp::kVFlip, "vflip"},       {AugOp::kRot90, "rot90"},
};

Image mix(const Image& a, const Image& b, double lambda) {
  Image out(a.height(), a.width());
  auto dst = out.data();
  const auto pa = a.data();
  const auto pb = b.data();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    dst[i] = std::clamp(lambda * pa[i] + (1.0 - lambda) * pb[i], 0.0, 1.0);
  }
  return out;
}

Image blend_color(const Image& a, const std::array<double, 3>& color,
                  double lambda) {
  Image out = a;
  for (int c = 0; c < Image::kChannels; ++c) {
    for (double& v : out.plane(c)) {
      v = std::clamp(lambda * v + (1.0 - lambda) * color[c], 0.0, 1.0);
    }
  }
  return out;
}

// Copies rect of src into the same place in dst.
void copy_rect(Image& dst, const Image& src, const Rect& rect) {
  if (rect.empty()) return;
  paste(dst, crop(src, rect), rect.top, rect.left);
}

Image permute_channels(const Image& img, const std::array<int, 3>& perm) {
  Image out(img.height(), img.width());
  for (int c = 0; c < Image::kChannels; ++c) {
    std::ranges::copy(img.plane(perm[c]), out.plane(c).begin());
  }
  return out;
}

void require_rect_inside(const Rect& rect, const Image& lr) {
  if (rect.top < 0 || rect.left < 0 || rect.bottom() > lr.height() ||
      rect.right() > lr.width()) {
    throw Error(ErrorKind::kInvalidArgument,
                "augmentation rect outside the " + std::to_string(lr.height()) +
                    "x" + std::to_string(lr.width()) + " LR image");
  }
}

template <typename Enum, std::size_t N>
Enum lookup(const std::pair<const char*, Enum> (&table)[N], std::string_view key,
            const char* field) {
  for (const auto& [name, value] : table) {
    if (key == name) return value;
  }
  throw Error(ErrorKind::kConfig,
              std::string("unknown ") + field + " '" + std::string(key) + "'");
}

template <typename Enum, std::size_t N>
const char* reverse_lookup(const std::pair<const char*, Enum> (&table)[N],
                           Enum value) {
  for (const auto& [name, v] : table) {
    if (v == value) return name;
  }
  return table[0].first;
}

constexpr std::pair<const char*, CutBlurDirection> kDirections[] = {
    {"random", CutBlurDirection::kRandom},
    {"hr_to_lr", CutBlurDirection::kHrToLr},
    {"lr_to_hr", CutBlurDirection::kLrToHr},
};
constexpr std::pair<const char*, CutMixupMode> kMixupModes[] = {
    {"random", CutMixupMode::kRandom},
    {"inside", CutMixupMode::kInside},
    {"outside", CutMixupMode::kOutside},
};
constexpr std::pair<const char*, CutoutFill> kFills[] = {
    {"zero", CutoutFill::kZero},
    {"mean", CutoutFill::kMean},
};

AugSpec spec_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::kConfig, "augmentation spec must be an object");
  static const char* kKnown[] = {"op",    "seed",      "lambda",    "rect",
                                 "ratio", "permutation", "color",   "direction",
                                 "mode",  "fill"};
  for (const auto& [key, value] : j.items()) {
    if (std::ranges::find_if(kKnown, [&](const char* k) { return key == k; }) ==
        std::end(kKnown)) {
      throw Error(ErrorKind::kConfig, "unknown augmentation spec key '" + key + "'");
    }
  }
  AugSpec spec;
  try {
    if (!j.contains("op")) throw Error(ErrorKind::kConfig, "augmentation spec needs \"op\"");
    try {
      spec.op = parse_aug_op(j.at("op").get<std::string>());
    } catch (const Error& e) {
      throw Error(ErrorKind::kConfig, e.what());
    }
    spec.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("lambda")) spec.lambda = j.at("lambda").get<double>();
    if (j.contains("rect")) {
      const json& r = j.at("rect");
      spec.rect = Rect{r.at("top").get<int>(), r.at("left").get<int>(),
                       r.at("height").get<int>(), r.at("width").get<int>()};
    }
    spec.ratio = j.value("ratio", spec.ratio);
    if (j.contains("permutation")) {
      const json& p = j.at("permutation");
      if (p.is_string() && p.get<std::string>() == "random") {
        spec.random_permutation = true;
      } else {
        spec.permutation = p.get<std::array<int, 3>>();
      }
    }
    if (j.contains("color")) spec.color = j.at("color").get<std::array<double, 3>>();
    if (j.contains("direction"))
      spec.direction = lookup(kDirections, j.at("direction").get<std::string>(), "direction");
    if (j.contains("mode"))
      spec.mixup_mode = lookup(kMixupModes, j.at("mode").get<std::string>(), "mode");
    if (j.contains("fill"))
      spec.fill = lookup(kFills, j.at("fill").get<std::string>(), "fill");
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kConfig, std::string("malformed augmentation spec: ") + e.what());
  }
  try {
    spec.validate();
  } catch (const Error& e) {
    throw Error(ErrorKind::kConfig, e.what());
  }
  return spec;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kConfig, std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

void AugSpec::validate() const {
  if (lambda && !(*lambda >= 0.0 && *lambda <= 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "lambda must lie in [0, 1]");
  }
  if (!(ratio > 0.0 && ratio < 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "rect ratio must lie in (0, 1)");
  }
  std::array<int, 3> sorted = permutation;
  std::ranges::sort(sorted);
  if (sorted != std::array<int, 3>{0, 1, 2}) {
    throw Error(ErrorKind::kInvalidArgument,
                "permutation must be a bijection on {0, 1, 2}");
  }
  if (color && std::ranges::any_of(*color, [](double v) { return !(v >= 0.0 && v <= 1.0); })) {
    throw Error(ErrorKind::kInvalidArgument, "blend colour must lie in [0, 1]");
  }
  if (rect && (rect->height < 0 || rect->width < 0)) {
    throw Error(ErrorKind::kInvalidArgument, "rect size must be non-negative");
  }
}

int pair_scale(const ImagePair& pair) {
  const Image& lr = pair.lr;
  const Image& hr = pair.hr;
  if (lr.empty() || hr.empty() || hr.height() % lr.height() != 0 ||
      hr.width() % lr.width() != 0 ||
      hr.height() / lr.height() != hr.width() / lr.width()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "HR " + std::to_string(hr.height()) + "x" +
                    std::to_string(hr.width()) +
                    " is not an integer multiple of LR " +
                    std::to_string(lr.height()) + "x" + std::to_string(lr.width()));
  }
  return hr.height() / lr.height();
}

bool needs_partner(AugOp op) {
  return op == AugOp::kCutMix || op == AugOp::kMixup || op == AugOp::kCutMixup;
}

bool uses_rect(AugOp op) {
  return op == AugOp::kCutout || op == AugOp::kCutMix ||
         op == AugOp::kCutMixup || op == AugOp::kCutBlur;
}

Rect sample_rect(int height, int width, double ratio, Rng& rng) {
  const double t = rng.uniform(-1.0, 1.0);
  const double aspect = t >= 0.0 ? 1.0 + t : 1.0 / (1.0 - t);
  const auto rh = static_cast<int>(std::clamp<long long>(
      std::llround(height * std::sqrt(ratio * aspect)), 1, height));
  const auto rw = static_cast<int>(std::clamp<long long>(
      std::llround(width * std::sqrt(ratio / aspect)), 1, width));
  const auto top = static_cast<int>(rng.uniform_int(0, height - rh));
  const auto left = static_cast<int>(rng.uniform_int(0, width - rw));
  return {top, left, rh, rw};
}

ImagePair augment_pair(const ImagePair& pair, const AugSpec& spec,
                       const ImagePair* partner, Rng& rng) {
  spec.validate();
  const int s = pair_scale(pair);
  if (needs_partner(spec.op)) {
    if (partner == nullptr) {
      throw Error(ErrorKind::kInvalidArgument,
                  std::string(to_string(spec.op)) + " needs a partner pair");
    }
    require_same_dims(pair.lr, partner->lr, "augmentation partner LR");
    require_same_dims(pair.hr, partner->hr, "augmentation partner HR");
  }

  Rect rect;
  if (uses_rect(spec.op)) {
    rect = spec.rect ? *spec.rect
                     : sample_rect(pair.lr.height(), pair.lr.width(), spec.ratio, rng);
    require_rect_inside(rect, pair.lr);
  }
  const Rect hr_rect = rect.scaled(s);
  auto draw_lambda = [&] { return spec.lambda ? *spec.lambda : rng.uniform(); };

  ImagePair out = pair;
  switch (spec.op) {
    case AugOp::kCutout: {
      if (rect.empty()) break;
      for (int c = 0; c < Image::kChannels; ++c) {
        double fill = 0.0;
        if (spec.fill == CutoutFill::kMean) {
          const auto plane = pair.lr.plane(c);
          for (double v : plane) fill += v;
          fill /= static_cast<double>(plane.size());
        }
        for (int y = rect.top; y < rect.bottom(); ++y)
          for (int x = rect.left; x < rect.right(); ++x) out.lr.at(c, y, x) = fill;
      }
      break;
    }
    case AugOp::kCutMix:
      copy_rect(out.lr, partner->lr, rect);
      copy_rect(out.hr, partner->hr, hr_rect);
      break;
    case AugOp::kMixup: {
      const double lambda = draw_lambda();
      out.lr = mix(pair.lr, partner->lr, lambda);
      out.hr = mix(pair.hr, partner->hr, lambda);
      break;
    }
    case AugOp::kCutMixup: {
      const double lambda = draw_lambda();
      CutMixupMode mode = spec.mixup_mode;
      if (mode == CutMixupMode::kRandom) {
        mode = rng.coin() ? CutMixupMode::kInside : CutMixupMode::kOutside;
      }
      const Image mixed_lr = mix(pair.lr, partner->lr, lambda);
      const Image mixed_hr = mix(pair.hr, partner->hr, lambda);
      if (mode == CutMixupMode::kInside) {
        copy_rect(out.lr, mixed_lr, rect);
        copy_rect(out.hr, mixed_hr, hr_rect);
      } else {
        out.lr = mixed_lr;
        out.hr = mixed_hr;
        copy_rect(out.lr, pair.lr, rect);
        copy_rect(out.hr, pair.hr, hr_rect);
      }
      break;
    }
    case AugOp::kCutBlur: {
      CutBlurDirection dir = spec.direction;
      if (dir == CutBlurDirection::kRandom) {
        dir = rng.coin() ? CutBlurDirection::kHrToLr : CutBlurDirection::kLrToHr;
      }
      if (rect.empty()) break;
      if (dir == CutBlurDirection::kHrToLr) {
        paste(out.lr, downscale_box(crop(pair.hr, hr_rect), s), rect.top, rect.left);
      } else {
        paste(out.hr, upscale_nearest(crop(pair.lr, rect), s), hr_rect.top,
              hr_rect.left);
      }
      break;
    }
    case AugOp::kRgbPerm: {
      std::array<int, 3> perm = spec.permutation;
      if (spec.random_permutation) {
        perm = {0, 1, 2};
        for (int i = 2; i > 0; --i) {
          std::swap(perm[i], perm[rng.uniform_int(0, i)]);
        }
      }
      out.lr = permute_channels(pair.lr, perm);
      out.hr = permute_channels(pair.hr, perm);
      break;
    }
    case AugOp::kBlend: {
      const double lambda = draw_lambda();
      std::array<double, 3> color{};
      if (spec.color) {
        color = *spec.color;
      } else {
        for (double& v : color) v = rng.uniform();
      }
      out.lr = blend_color(pair.lr, color, lambda);
      out.hr = blend_color(pair.hr, color, lambda);
      break;
    }
    case AugOp::kHFlip:
    case AugOp::kVFlip:
    case AugOp::kRot90: {
      const Transform t = spec.op == AugOp::kHFlip   ? Transform{0, true}
                          : spec.op == AugOp::kVFlip ? Transform{2, true}
                                                     : Transform{1, false};
      out.lr = apply_transform(pair.lr, t);
      out.hr = apply_transform(pair.hr, t);
      break;
    }
  }
  return out;
}

ImagePair augment_pair(const ImagePair& pair, const AugSpec& spec,
                       const ImagePair* partner) {
  Rng rng = make_rng(spec.seed);
  return augment_pair(pair, spec, partner, rng);
}

AugOp parse_aug_op(std::string_view name) {
  for (const auto& entry : kOpNames) {
    if (name == entry.name) return entry.op;
  }
  throw Error(ErrorKind::kInvalidArgument,
              "unknown augmentation op '" + std::string(name) + "'");
}

const char* to_string(AugOp op) {
  for (const auto& entry : kOpNames) {
    if (entry.op == op) return entry.name;
  }
  return "unknown";
}

AugSpec parse_aug_spec(std::string_view json_text) {
  return spec_from_json(parse_json(json_text));
}

std::vector<AugSpec> parse_aug_pipeline(std::string_view json_text) {
  const json doc = parse_json(json_text);
  std::vector<AugSpec> specs;
  if (doc.is_array()) {
    if (doc.empty()) throw Error(ErrorKind::kConfig, "empty augmentation pipeline");
    for (const json& item : doc) specs.push_back(spec_from_json(item));
  } else {
    specs.push_back(spec_from_json(doc));
  }
  return specs;
}

std::string to_json(const AugSpec& spec) {
  json j = {{"op", to_string(spec.op)}, {"seed", spec.seed}, {"ratio", spec.ratio}};
  if (spec.lambda) j["lambda"] = *spec.lambda;
  if (spec.rect) {
    j["rect"] = {{"top", spec.rect->top},
                 {"left", spec.rect->left},
                 {"height", spec.rect->height},
                 {"width", spec.rect->width}};
  }
  if (spec.random_permutation) {
    j["permutation"] = "random";
  } else {
    j["permutation"] = spec.permutation;
  }
  if (spec.color) j["color"] = *spec.color;
  j["direction"] = reverse_lookup(kDirections, spec.direction);
  j["mode"] = reverse_lookup(kMixupModes, spec.mixup_mode);
  j["fill"] = reverse_lookup(kFills, spec.fill);
  return j.dump();
}

}  // namespace srbench
