#include "srbench/transform.hpp"

namespace srbench {

namespace {

Image flip_horizontal(const Image& img) {
  Image out(img.height(), img.width());
  const int w = img.width();
  for (int c = 0; c < Image::kChannels; ++c) {
    for (int y = 0; y < img.height(); ++y) {
      for (int x = 0; x < w; ++x) out.at(c, y, w - 1 - x) = img.at(c, y, x);
    }
  }
  return out;
}

Image rotate_clockwise(const Image& img, int quarter_turns) {
  const int h = img.height();
  const int w = img.width();
  switch (quarter_turns & 3) {
    case 0:
      return img;
    case 1: {
      Image out(w, h);
      for (int c = 0; c < Image::kChannels; ++c)
        for (int y = 0; y < h; ++y)
          for (int x = 0; x < w; ++x) out.at(c, x, h - 1 - y) = img.at(c, y, x);
      return out;
    }
    case 2: {
      Image out(h, w);
      for (int c = 0; c < Image::kChannels; ++c)
        for (int y = 0; y < h; ++y)
          for (int x = 0; x < w; ++x)
            out.at(c, h - 1 - y, w - 1 - x) = img.at(c, y, x);
      return out;
    }
    default: {
      Image out(w, h);
      for (int c = 0; c < Image::kChannels; ++c)
        for (int y = 0; y < h; ++y)
          for (int x = 0; x < w; ++x) out.at(c, w - 1 - x, y) = img.at(c, y, x);
      return out;
    }
  }
}

}  // namespace

std::string Transform::name() const {
  std::string s = "rot" + std::to_string(quarter_turns * 90);
  if (flipped) s += "+flip";
  return s;
}

std::array<Transform, kGroupOrder> all_transforms() {
  std::array<Transform, kGroupOrder> out;
  for (int i = 0; i < kGroupOrder; ++i) out[i] = Transform::from_index(i);
  return out;
}

// With R = clockwise turn and F = flip, an element acts as R^k F^f and
// F R = R^-1 F.
Transform compose(const Transform& first, const Transform& second) {
  const int k = second.flipped ? second.quarter_turns - first.quarter_turns
                               : second.quarter_turns + first.quarter_turns;
  return {((k % 4) + 4) % 4, first.flipped != second.flipped};
}

Transform inverse(const Transform& t) {
  if (t.flipped) return t;
  return {(4 - t.quarter_turns) % 4, false};
}

Image apply_transform(const Image& img, const Transform& t) {
  return rotate_clockwise(t.flipped ? flip_horizontal(img) : img,
                          t.quarter_turns);
}

Image invert_transform(const Image& img, const Transform& t) {
  return apply_transform(img, inverse(t));
}

}  // namespace srbench
