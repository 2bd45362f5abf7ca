#pragma once

#include <cstdint>
#include <random>

#include "srbench/image.hpp"

namespace srbench::bench {

inline Image noise_image(int height, int width, std::uint32_t seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  Image img(height, width);
  for (double& v : img.data()) v = dist(gen);
  return img;
}

inline Raster noise_raster(int height, int width, std::uint32_t seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Raster r(height, width);
  for (double& v : r.values()) v = dist(gen);
  return r;
}

}  // namespace srbench::bench
