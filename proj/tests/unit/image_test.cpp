#include <cmath>
#include <cstdint>
#include <fstream>
#include <vector>

#include <gtest/gtest.h>
#include <png.h>

#include "srbench/image.hpp"
#include "srbench/png_io.hpp"
#include "support.hpp"

namespace srbench {
namespace {

using test::random_image;
using test::random_image8;
using test::TempDir;

TEST(PixelDepth, QuantizeRoundsHalfAwayAndClamps) {
  EXPECT_EQ(PixelDepthPolicy::quantize(0.0), 0);
  EXPECT_EQ(PixelDepthPolicy::quantize(1.0), 255);
  EXPECT_EQ(PixelDepthPolicy::quantize(-0.3), 0);
  EXPECT_EQ(PixelDepthPolicy::quantize(1.7), 255);
  EXPECT_EQ(PixelDepthPolicy::quantize(0.5 / 255.0), 1);
  EXPECT_EQ(PixelDepthPolicy::quantize(127.5 / 255.0), 128);
  for (int level = 0; level < 256; ++level) {
    EXPECT_EQ(PixelDepthPolicy::quantize(PixelDepthPolicy::dequantize(level)), level);
  }
}

TEST(Image, PlanarLayout) {
  Image img(2, 3);
  img.at(1, 1, 2) = 0.5;
  EXPECT_EQ(img.data()[1 * 6 + 1 * 3 + 2], 0.5);
  EXPECT_EQ(img.plane(1)[5], 0.5);
  EXPECT_EQ(img.sample_count(), 18u);
}

TEST(Image, Rgb8RoundTrip) {
  std::vector<std::uint8_t> bytes(4 * 5 * 3);
  for (std::size_t i = 0; i < bytes.size(); ++i) bytes[i] = static_cast<std::uint8_t>(i * 37);
  const Image img = Image::from_rgb8(4, 5, bytes);
  EXPECT_EQ(img.at(2, 0, 1), bytes[5] / 255.0);
  EXPECT_EQ(img.to_rgb8(), bytes);
  EXPECT_SRBENCH_ERROR(Image::from_rgb8(4, 5, std::span(bytes).first(10)),
                       ErrorKind::kInvalidArgument);
}

TEST(Image, RejectsNonPositiveDims) {
  EXPECT_SRBENCH_ERROR(Image(0, 4), ErrorKind::kInvalidArgument);
  EXPECT_SRBENCH_ERROR(Raster(3, -1), ErrorKind::kInvalidArgument);
}

TEST(Image, ValidChecksRangeAndFiniteness) {
  Image img(2, 2, 0.5);
  EXPECT_TRUE(img.valid());
  img.at(0, 0, 0) = 1.0000001;
  EXPECT_FALSE(img.valid());
  img.at(0, 0, 0) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_FALSE(img.valid());
}

TEST(Image, ChannelRoundTrip) {
  Image img = random_image(5, 7, 1);
  const Raster g = img.channel(1);
  EXPECT_EQ(g(3, 4), img.at(1, 3, 4));
  Image other(5, 7);
  for (int c = 0; c < 3; ++c) other.set_channel(c, img.channel(c));
  EXPECT_EQ(other, img);
}

TEST(Image, CropPasteInverse) {
  const Image img = random_image(10, 12, 2);
  const Rect r{2, 3, 4, 5};
  const Image part = crop(img, r);
  EXPECT_EQ(part.height(), 4);
  EXPECT_EQ(part.at(0, 0, 0), img.at(0, 2, 3));
  EXPECT_EQ(part.at(2, 3, 4), img.at(2, 5, 7));
  Image blank(10, 12);
  paste(blank, part, 2, 3);
  EXPECT_EQ(crop(blank, r), part);
  EXPECT_EQ(blank.at(0, 0, 0), 0.0);
  EXPECT_SRBENCH_ERROR(crop(img, 8, 0, 4, 4), ErrorKind::kInvalidArgument);
  EXPECT_SRBENCH_ERROR(paste(blank, part, 7, 0), ErrorKind::kInvalidArgument);
}

TEST(Image, UpscaleDownscaleBox) {
  const Image img = random_image(3, 4, 3);
  const Image up = upscale_nearest(img, 3);
  ASSERT_EQ(up.height(), 9);
  ASSERT_EQ(up.width(), 12);
  for (int c = 0; c < 3; ++c)
    for (int y = 0; y < 9; ++y)
      for (int x = 0; x < 12; ++x) EXPECT_EQ(up.at(c, y, x), img.at(c, y / 3, x / 3));
  EXPECT_EQ(downscale_box(upscale_nearest(img, 2), 2), img);
  EXPECT_LT(test::max_abs_diff(downscale_box(up, 3), img), 1e-15);
  EXPECT_SRBENCH_ERROR(downscale_box(random_image(5, 4, 1), 2), ErrorKind::kInvalidArgument);
}

TEST(Image, ContentHashSeesDimsAndBits) {
  const Image a = random_image(4, 6, 4);
  Image b = a;
  EXPECT_EQ(content_hash(a), content_hash(b));
  b.at(2, 3, 5) = std::nextafter(b.at(2, 3, 5), 2.0);
  EXPECT_NE(content_hash(a), content_hash(b));
  EXPECT_NE(content_hash(Image(4, 6)), content_hash(Image(6, 4)));
}

TEST(Image, RequireSameDims) {
  EXPECT_NO_THROW(require_same_dims(Image(3, 3), Image(3, 3), "x"));
  EXPECT_SRBENCH_ERROR(require_same_dims(Image(3, 3), Image(3, 4), "x"),
                       ErrorKind::kDimensionMismatch);
}

// ---- PNG

void write_png_raw(const std::filesystem::path& path, int w, int h, png_uint_32 format,
                   const void* buffer) {
  png_image png{};
  png.version = PNG_IMAGE_VERSION;
  png.width = static_cast<png_uint_32>(w);
  png.height = static_cast<png_uint_32>(h);
  png.format = format;
  ASSERT_TRUE(png_image_write_to_file(&png, path.c_str(), 0, buffer, 0, nullptr));
}

TEST(Png, LosslessRoundTripOfQuantizedImage) {
  TempDir dir;
  const Image img = random_image8(13, 17, 5);
  save_png(img, dir / "a.png");
  EXPECT_EQ(load_png(dir / "a.png"), img);
}

TEST(Png, SaveQuantizes) {
  TempDir dir;
  const Image img = random_image(6, 6, 6);
  save_png(img, dir / "a.png");
  EXPECT_EQ(load_png(dir / "a.png"), img.quantized());
}

TEST(Png, GrayIsReplicatedAndAlphaDropped) {
  TempDir dir;
  const std::vector<std::uint8_t> gray{0, 10, 200, 255};
  write_png_raw(dir / "g.png", 2, 2, PNG_FORMAT_GRAY, gray.data());
  const Image g = load_png(dir / "g.png");
  for (int c = 0; c < 3; ++c) EXPECT_EQ(g.at(c, 1, 0), 200 / 255.0);

  const std::vector<std::uint8_t> rgba{10, 20, 30, 0, 40, 50, 60, 128};
  write_png_raw(dir / "a.png", 2, 1, PNG_FORMAT_RGBA, rgba.data());
  const Image a = load_png(dir / "a.png");
  EXPECT_EQ(a.to_rgb8(), (std::vector<std::uint8_t>{10, 20, 30, 40, 50, 60}));
}

TEST(Png, Rejects16Bit) {
  TempDir dir;
  const std::vector<std::uint16_t> rgb(2 * 2 * 3, 1000);
  write_png_raw(dir / "deep.png", 2, 2, PNG_FORMAT_LINEAR_RGB, rgb.data());
  EXPECT_SRBENCH_ERROR(load_png(dir / "deep.png"), ErrorKind::kUnsupportedFormat);
}

TEST(Png, ErrorKinds) {
  TempDir dir;
  EXPECT_SRBENCH_ERROR(load_png(dir / "missing.png"), ErrorKind::kFileNotFound);
  test::spit(dir / "fake.png", "GIF89a not a png at all");
  EXPECT_SRBENCH_ERROR(load_png(dir / "fake.png"), ErrorKind::kUnsupportedFormat);

  save_png(random_image8(32, 32, 7), dir / "ok.png");
  std::string bytes = test::slurp(dir / "ok.png");
  test::spit(dir / "cut.png", bytes.substr(0, bytes.size() / 2));
  EXPECT_SRBENCH_ERROR(load_png(dir / "cut.png"), ErrorKind::kCorruptData);

  EXPECT_SRBENCH_ERROR(save_png(Image(2, 2), dir / "no" / "such" / "dir.png"), ErrorKind::kIo);
}

}  // namespace
}  // namespace srbench
