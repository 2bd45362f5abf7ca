#pragma once

#include <filesystem>

#include "srbench/image.hpp"

namespace srbench {

// Loads an 8-bit PNG. RGB is taken as is, RGBA drops alpha, grayscale is
// replicated to three channels and palette images are expanded. 16-bit
// files are rejected with kUnsupportedFormat rather than truncated.
//
// Errors (all name the path): kFileNotFound, kUnsupportedFormat for non-PNG
// or 16-bit input, kCorruptData for a PNG stream that fails to decode.
Image load_png(const std::filesystem::path& path);

// Writes an 8-bit RGB PNG of img.quantized(). Throws kIo when the path is
// not writable.
void save_png(const Image& img, const std::filesystem::path& path);

}  // namespace srbench
