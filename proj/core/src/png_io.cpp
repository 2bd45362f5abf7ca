#include "srbench/png_io.hpp"

#include <png.h>

#include <array>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "srbench/error.hpp"

namespace srbench {

namespace {

// Frees libpng's internal state on every exit path.
class PngImage {
 public:
  PngImage() {
    std::memset(&image_, 0, sizeof(image_));
    image_.version = PNG_IMAGE_VERSION;
  }
  ~PngImage() { png_image_free(&image_); }
  PngImage(const PngImage&) = delete;
  PngImage& operator=(const PngImage&) = delete;

  png_image* get() { return &image_; }
  png_image* operator->() { return &image_; }

 private:
  png_image image_;
};

bool has_png_signature(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::array<unsigned char, 8> sig{};
  in.read(reinterpret_cast<char*>(sig.data()), sig.size());
  return in.gcount() == static_cast<std::streamsize>(sig.size()) &&
         png_sig_cmp(sig.data(), 0, sig.size()) == 0;
}

}  // namespace

Image load_png(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw Error(ErrorKind::kFileNotFound, "no such file: " + path.string());
  }
  if (!has_png_signature(path)) {
    throw Error(ErrorKind::kUnsupportedFormat,
                "not a PNG file: " + path.string());
  }

  PngImage png;
  if (!png_image_begin_read_from_file(png.get(), path.c_str())) {
    throw Error(ErrorKind::kCorruptData,
                "cannot decode PNG header of " + path.string() + ": " +
                    png->message);
  }
  if (png->format & PNG_FORMAT_FLAG_LINEAR) {
    throw Error(ErrorKind::kUnsupportedFormat,
                "16-bit PNG not supported: " + path.string());
  }
  if (png->width == 0 || png->height == 0) {
    throw Error(ErrorKind::kCorruptData, "empty PNG: " + path.string());
  }

  // Decode as RGBA so alpha is dropped by us rather than composited.
  png->format = PNG_FORMAT_RGBA;
  const auto height = static_cast<int>(png->height);
  const auto width = static_cast<int>(png->width);
  std::vector<png_byte> rgba(PNG_IMAGE_SIZE(*png.get()));
  if (!png_image_finish_read(png.get(), nullptr, rgba.data(), 0, nullptr)) {
    throw Error(ErrorKind::kCorruptData,
                "corrupt PNG stream in " + path.string() + ": " + png->message);
  }

  std::vector<std::uint8_t> rgb(static_cast<std::size_t>(height) * width * 3);
  for (std::size_t i = 0, n = rgb.size() / 3; i < n; ++i) {
    rgb[3 * i + 0] = rgba[4 * i + 0];
    rgb[3 * i + 1] = rgba[4 * i + 1];
    rgb[3 * i + 2] = rgba[4 * i + 2];
  }
  return Image::from_rgb8(height, width, rgb);
}

void save_png(const Image& img, const std::filesystem::path& path) {
  if (img.empty()) {
    throw Error(ErrorKind::kInvalidArgument,
                "cannot save empty image to " + path.string());
  }
  const std::vector<std::uint8_t> rgb = img.to_rgb8();
  PngImage png;
  png->width = static_cast<png_uint_32>(img.width());
  png->height = static_cast<png_uint_32>(img.height());
  png->format = PNG_FORMAT_RGB;
  if (!png_image_write_to_file(png.get(), path.c_str(), 0, rgb.data(), 0,
                               nullptr)) {
    throw Error(ErrorKind::kIo,
                "cannot write PNG " + path.string() + ": " + png->message);
  }
}

}  // namespace srbench
