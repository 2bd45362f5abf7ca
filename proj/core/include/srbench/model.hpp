#pragma once

#include <functional>
#include <string>

#include "srbench/image.hpp"

namespace srbench {

// A super-resolution model seen as a black box: maps an h x w image to a
// (scale*h) x (scale*w) image. Callers verify the size contract on every
// call. `thread_safe` declares that `run` may be invoked concurrently.
struct Model {
  int scale = 1;
  std::function<Image(const Image&)> run;
  bool thread_safe = false;

  Image operator()(const Image& img) const { return run(img); }
};

// Nearest-neighbour upscaler; equivariant under every D4 transform.
Model nearest_neighbor_model(int scale);

// Wraps an executable invoked as `<command> <input.png> <output.png>`
// through the shell. The input is quantized to 8 bits on the way out, as
// any PNG round trip would. Each call uses its own temporary files, so the
// adapter is thread safe. A non-zero exit status or a missing output file
// raises kModelFailure.
Model external_command_model(std::string command, int scale);

// Throws kModelFailure unless out is scale times the size of in.
void check_model_output(const Image& in, const Image& out, int scale,
                        const std::string& context);

}  // namespace srbench
