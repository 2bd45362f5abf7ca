#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "srbench/attention.hpp"
#include "srbench/error.hpp"
#include "srbench/image.hpp"
#include "srbench/model.hpp"
#include "srbench/transform.hpp"

namespace srbench::test {

// Uniform [0, 1) samples from a private generator, independent of srbench::Rng.
Image random_image(int height, int width, std::uint64_t seed);
// Same, snapped to the 8-bit grid so PNG round trips are lossless.
Image random_image8(int height, int width, std::uint64_t seed);
Raster random_raster(int height, int width, std::uint64_t seed, double lo = -1.0,
                     double hi = 1.0);
// y = clamp(x + amplitude * noise); structurally close to x.
Image perturbed(const Image& x, double amplitude, std::uint64_t seed);

class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

std::string slurp(const std::filesystem::path& path);
void spit(const std::filesystem::path& path, const std::string& text);

// ---- Oracles. Written from the textbook definitions, sharing no code with
// the library beyond the container types.

double oracle_psnr(const Image& a, const Image& b);

// Mean over all valid window positions of the per-window SSIM, each window
// evaluated directly with the 2-D Gaussian weights and centred moments.
double oracle_ssim_channel(const Raster& a, const Raster& b, int window = 11,
                           double sigma = 1.5);
double oracle_ssim(const Image& a, const Image& b);

// Mean over non-overlapping factor x factor blocks; dims divisible by factor.
Raster oracle_block_pool(const Raster& r, int factor);
Image oracle_block_pool(const Image& img, int factor);

// Pixel-mapping definition of a D4 element: flip x -> W-1-x first, then
// quarter_turns clockwise turns (r, c) -> (c, H-1-r).
Image oracle_transform(const Image& img, int quarter_turns, bool flipped);

// Separable box blur of radius r with edge replication.
Image box_blur(const Image& img, int radius);

Model identity_model();
Model blur_model(int radius);
// Nearest x scale followed by a box blur of radius r in output pixels.
Model upscale_blur_model(int scale, int radius);

FeatureMap random_feature_map(int c, int h, int w, std::uint64_t seed);

double max_abs_diff(const Image& a, const Image& b);
double max_abs_diff(const Raster& a, const Raster& b);

// Seeded synthetic dataset under `root`: lr/, hr/ (scale x lr, smooth
// content plus texture) and sr/ (hr with mild noise), img_000.png onward.
void write_synthetic_dataset(const std::filesystem::path& root, int count, int lr_height,
                             int lr_width, int scale, std::uint64_t seed);

}  // namespace srbench::test

// Expects `stmt` to throw srbench::Error of the given kind.
#define EXPECT_SRBENCH_ERROR(stmt, expected_kind)                         \
  EXPECT_THROW(                                                           \
      {                                                                   \
        try {                                                             \
          stmt;                                                           \
        } catch (const ::srbench::Error& srbench_error_) {                \
          EXPECT_EQ(srbench_error_.kind(), expected_kind) << srbench_error_.what(); \
          throw;                                                          \
        }                                                                 \
      },                                                                  \
      ::srbench::Error)
