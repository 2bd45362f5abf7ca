#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace srbench {

// Axis-aligned pixel rectangle, [top, top+height) x [left, left+width).
struct Rect {
  int top = 0;
  int left = 0;
  int height = 0;
  int width = 0;

  int bottom() const { return top + height; }
  int right() const { return left + width; }
  long long area() const { return static_cast<long long>(height) * width; }
  bool empty() const { return height <= 0 || width <= 0; }
  bool contains(const Rect& other) const;
  Rect scaled(int factor) const {
    return {top * factor, left * factor, height * factor, width * factor};
  }

  friend bool operator==(const Rect&, const Rect&) = default;
};

// Single real-valued plane, row-major. Used for wavelet bands and any
// per-channel processing; values are unconstrained.
class Raster {
 public:
  Raster() = default;
  Raster(int height, int width, double fill = 0.0);

  int height() const { return height_; }
  int width() const { return width_; }
  std::size_t size() const { return values_.size(); }

  double& operator()(int y, int x) { return values_[index(y, x)]; }
  double operator()(int y, int x) const { return values_[index(y, x)]; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  friend bool operator==(const Raster&, const Raster&) = default;

 private:
  std::size_t index(int y, int x) const {
    return static_cast<std::size_t>(y) * width_ + x;
  }

  int height_ = 0;
  int width_ = 0;
  std::vector<double> values_;
};

// Fixed 8-bit convention used for every metric and for PNG output.
struct PixelDepthPolicy {
  static constexpr double kMaxValue = 255.0;

  // round-half-away-from-zero of value*255, clamped to [0, 255]
  static std::uint8_t quantize(double value);
  static double dequantize(std::uint8_t level) { return level / kMaxValue; }
};

// H x W x 3 planar RGB raster with values in [0, 1].
//
// Storage is one contiguous buffer holding the R, G and B planes in order,
// each row-major. The [0, 1] range is an invariant of images produced by the
// library (loading, averaging, augmenting); code that fills pixels by hand
// can call valid() to check it.
class Image {
 public:
  static constexpr int kChannels = 3;

  Image() = default;
  Image(int height, int width, double fill = 0.0);

  // Interleaved RGB bytes, height*width*3 of them.
  static Image from_rgb8(int height, int width,
                         std::span<const std::uint8_t> interleaved);

  int height() const { return height_; }
  int width() const { return width_; }
  std::size_t plane_size() const {
    return static_cast<std::size_t>(height_) * width_;
  }
  std::size_t sample_count() const { return plane_size() * kChannels; }
  bool empty() const { return data_.empty(); }

  double& at(int c, int y, int x) { return data_[index(c, y, x)]; }
  double at(int c, int y, int x) const { return data_[index(c, y, x)]; }

  std::span<double> plane(int c) {
    return {data_.data() + c * plane_size(), plane_size()};
  }
  std::span<const double> plane(int c) const {
    return {data_.data() + c * plane_size(), plane_size()};
  }
  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  Raster channel(int c) const;
  void set_channel(int c, const Raster& raster);

  // Quantized interleaved RGB bytes.
  std::vector<std::uint8_t> to_rgb8() const;
  Image quantized() const;

  // Finite and within [0, 1], non-empty.
  bool valid() const;

  bool same_dims(const Image& other) const {
    return height_ == other.height_ && width_ == other.width_;
  }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t index(int c, int y, int x) const {
    return c * plane_size() + static_cast<std::size_t>(y) * width_ + x;
  }

  int height_ = 0;
  int width_ = 0;
  std::vector<double> data_;
};

// Throws kDimensionMismatch naming `what` if a and b differ in size.
void require_same_dims(const Image& a, const Image& b, std::string_view what);

Image crop(const Image& img, int top, int left, int height, int width);
Image crop(const Image& img, const Rect& rect);

// Copies all of `src` into `dst` with its top-left corner at (top, left).
void paste(Image& dst, const Image& src, int top, int left);

Image upscale_nearest(const Image& img, int factor);

// Mean over factor x factor blocks; dims must be divisible by factor.
Image downscale_box(const Image& img, int factor);

// FNV-1a over dims and the IEEE bit patterns of every sample.
std::uint64_t content_hash(const Image& img);

}  // namespace srbench
