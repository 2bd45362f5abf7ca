#include "srbench/image.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "srbench/error.hpp"

namespace srbench {

namespace {

void require_positive_dims(int height, int width) {
  if (height < 1 || width < 1) {
    throw Error(ErrorKind::kInvalidArgument,
                "image dimensions must be positive, got " +
                    std::to_string(height) + "x" + std::to_string(width));
  }
}

std::string rect_string(const Rect& r) {
  return "(top=" + std::to_string(r.top) + ", left=" + std::to_string(r.left) +
         ", " + std::to_string(r.height) + "x" + std::to_string(r.width) + ")";
}

}  // namespace

bool Rect::contains(const Rect& other) const {
  return other.top >= top && other.left >= left && other.bottom() <= bottom() &&
         other.right() <= right();
}

Raster::Raster(int height, int width, double fill)
    : height_(height), width_(width) {
  require_positive_dims(height, width);
  values_.assign(static_cast<std::size_t>(height) * width, fill);
}

std::uint8_t PixelDepthPolicy::quantize(double value) {
  const double scaled = std::clamp(value * kMaxValue, 0.0, kMaxValue);
  // std::lround rounds halfway cases away from zero.
  return static_cast<std::uint8_t>(std::lround(scaled));
}

Image::Image(int height, int width, double fill)
    : height_(height), width_(width) {
  require_positive_dims(height, width);
  data_.assign(sample_count(), fill);
}

Image Image::from_rgb8(int height, int width,
                       std::span<const std::uint8_t> interleaved) {
  Image img(height, width);
  if (interleaved.size() != img.sample_count()) {
    throw Error(ErrorKind::kInvalidArgument,
                "rgb8 buffer has " + std::to_string(interleaved.size()) +
                    " bytes, expected " + std::to_string(img.sample_count()));
  }
  const std::size_t n = img.plane_size();
  for (std::size_t i = 0; i < n; ++i) {
    for (int c = 0; c < kChannels; ++c) {
      img.data_[c * n + i] =
          PixelDepthPolicy::dequantize(interleaved[i * kChannels + c]);
    }
  }
  return img;
}

Raster Image::channel(int c) const {
  Raster r(height_, width_);
  std::ranges::copy(plane(c), r.values().begin());
  return r;
}

void Image::set_channel(int c, const Raster& raster) {
  if (raster.height() != height_ || raster.width() != width_) {
    throw Error(ErrorKind::kDimensionMismatch,
                "channel raster does not match image dimensions");
  }
  std::ranges::copy(raster.values(), plane(c).begin());
}

std::vector<std::uint8_t> Image::to_rgb8() const {
  std::vector<std::uint8_t> out(sample_count());
  const std::size_t n = plane_size();
  for (std::size_t i = 0; i < n; ++i) {
    for (int c = 0; c < kChannels; ++c) {
      out[i * kChannels + c] = PixelDepthPolicy::quantize(data_[c * n + i]);
    }
  }
  return out;
}

Image Image::quantized() const {
  Image out = *this;
  for (double& v : out.data_) {
    v = PixelDepthPolicy::dequantize(PixelDepthPolicy::quantize(v));
  }
  return out;
}

bool Image::valid() const {
  if (data_.empty()) return false;
  return std::ranges::all_of(data_, [](double v) {
    return std::isfinite(v) && v >= 0.0 && v <= 1.0;
  });
}

void require_same_dims(const Image& a, const Image& b, std::string_view what) {
  if (!a.same_dims(b)) {
    throw Error(ErrorKind::kDimensionMismatch,
                std::string(what) + ": " + std::to_string(a.height()) + "x" +
                    std::to_string(a.width()) + " vs " +
                    std::to_string(b.height()) + "x" +
                    std::to_string(b.width()));
  }
}

Image crop(const Image& img, const Rect& rect) {
  const Rect bounds{0, 0, img.height(), img.width()};
  if (rect.empty() || !bounds.contains(rect)) {
    throw Error(ErrorKind::kInvalidArgument,
                "crop window " + rect_string(rect) + " outside " +
                    std::to_string(img.height()) + "x" +
                    std::to_string(img.width()) + " image");
  }
  Image out(rect.height, rect.width);
  for (int c = 0; c < Image::kChannels; ++c) {
    for (int y = 0; y < rect.height; ++y) {
      const double* src = &img.plane(c)[static_cast<std::size_t>(rect.top + y) *
                                            img.width() +
                                        rect.left];
      std::copy(src, src + rect.width, &out.at(c, y, 0));
    }
  }
  return out;
}

Image crop(const Image& img, int top, int left, int height, int width) {
  return crop(img, Rect{top, left, height, width});
}

void paste(Image& dst, const Image& src, int top, int left) {
  const Rect bounds{0, 0, dst.height(), dst.width()};
  const Rect target{top, left, src.height(), src.width()};
  if (!bounds.contains(target)) {
    throw Error(ErrorKind::kInvalidArgument,
                "paste target " + rect_string(target) + " outside image");
  }
  for (int c = 0; c < Image::kChannels; ++c) {
    for (int y = 0; y < src.height(); ++y) {
      const double* row = &src.plane(c)[static_cast<std::size_t>(y) * src.width()];
      std::copy(row, row + src.width(), &dst.at(c, top + y, left));
    }
  }
}

Image upscale_nearest(const Image& img, int factor) {
  if (factor < 1) {
    throw Error(ErrorKind::kInvalidArgument, "upscale factor must be >= 1");
  }
  Image out(img.height() * factor, img.width() * factor);
  for (int c = 0; c < Image::kChannels; ++c) {
    for (int y = 0; y < out.height(); ++y) {
      for (int x = 0; x < out.width(); ++x) {
        out.at(c, y, x) = img.at(c, y / factor, x / factor);
      }
    }
  }
  return out;
}

Image downscale_box(const Image& img, int factor) {
  if (factor < 1 || img.height() % factor != 0 || img.width() % factor != 0) {
    throw Error(ErrorKind::kInvalidArgument,
                "box downscale factor " + std::to_string(factor) +
                    " does not divide " + std::to_string(img.height()) + "x" +
                    std::to_string(img.width()));
  }
  Image out(img.height() / factor, img.width() / factor);
  const double inv = 1.0 / (static_cast<double>(factor) * factor);
  for (int c = 0; c < Image::kChannels; ++c) {
    for (int y = 0; y < out.height(); ++y) {
      for (int x = 0; x < out.width(); ++x) {
        double sum = 0.0;
        for (int dy = 0; dy < factor; ++dy) {
          for (int dx = 0; dx < factor; ++dx) {
            sum += img.at(c, y * factor + dy, x * factor + dx);
          }
        }
        out.at(c, y, x) = sum * inv;
      }
    }
  }
  return out;
}

std::uint64_t content_hash(const Image& img) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t word) {
    for (int i = 0; i < 8; ++i) {
      h ^= (word >> (8 * i)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  };
  mix(static_cast<std::uint64_t>(img.height()));
  mix(static_cast<std::uint64_t>(img.width()));
  for (double v : img.data()) mix(std::bit_cast<std::uint64_t>(v));
  return h;
}

}  // namespace srbench
