#pragma once

#include <array>
#include <string>

#include "srbench/image.hpp"

namespace srbench {

// Element of the dihedral group D4 acting on images: an optional
// horizontal flip followed by `quarter_turns` clockwise 90-degree
// rotations. A clockwise quarter turn sends pixel (r, c) of an H x W image
// to (c, H-1-r).
struct Transform {
  int quarter_turns = 0;  // 0..3
  bool flipped = false;

  // Enumeration order used everywhere a deterministic order matters:
  // rot0, rot90, rot180, rot270, then the same with the flip.
  int index() const { return quarter_turns + (flipped ? 4 : 0); }
  static Transform from_index(int i) { return {i % 4, i >= 4}; }
  static Transform identity() { return {}; }

  std::string name() const;

  friend bool operator==(const Transform&, const Transform&) = default;
};

inline constexpr int kGroupOrder = 8;

std::array<Transform, kGroupOrder> all_transforms();

// apply(apply(x, first), second) == apply(x, compose(first, second))
Transform compose(const Transform& first, const Transform& second);
Transform inverse(const Transform& t);

Image apply_transform(const Image& img, const Transform& t);
Image invert_transform(const Image& img, const Transform& t);

}  // namespace srbench
