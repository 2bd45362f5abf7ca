#include "srbench/tiling.hpp"

#include <algorithm>
#include <string>

#include "srbench/error.hpp"
#include "srbench/parallel.hpp"

namespace srbench {

namespace {

struct Span1D {
  int window_start;
  int core_start;
  int core_end;
};

std::vector<Span1D> plan_axis(int length, int window, int core) {
  const int count = (length + core - 1) / core;
  std::vector<int> starts(count);
  for (int i = 0; i < count; ++i) starts[i] = std::min(i * core, length - window);
  // Neighbouring windows overlap by at least window - core, so the midpoint
  // of each overlap is at least (window - core) / 2 from both window edges.
  std::vector<Span1D> spans;
  int core_start = 0;
  for (int i = 0; i < count; ++i) {
    const int core_end =
        i + 1 == count ? length
                       : starts[i + 1] + (starts[i] + window - starts[i + 1]) / 2;
    if (core_end > core_start) {
      spans.push_back({starts[i], core_start, core_end});
      core_start = core_end;
    }
  }
  return spans;
}

}  // namespace

TileGrid plan_tiles(int height, int width, int window, int core, int scale) {
  if (scale < 1 || scale > 4) {
    throw Error(ErrorKind::kInvalidArgument,
                "tile scale must be 1..4, got " + std::to_string(scale));
  }
  if (core <= 0 || core > window) {
    throw Error(ErrorKind::kInvalidArgument,
                "tile core must satisfy 0 < core <= window, got core " +
                    std::to_string(core) + ", window " + std::to_string(window));
  }
  if (height < 1 || width < 1 || window > std::min(height, width)) {
    throw Error(ErrorKind::kInvalidArgument,
                "tile window " + std::to_string(window) + " larger than image " +
                    std::to_string(height) + "x" + std::to_string(width));
  }
  TileGrid grid{height, width, window, core, scale, 0, 0, {}};
  const auto ys = plan_axis(height, window, core);
  const auto xs = plan_axis(width, window, core);
  grid.rows = static_cast<int>(ys.size());
  grid.cols = static_cast<int>(xs.size());
  grid.tiles.reserve(ys.size() * xs.size());
  for (const Span1D& y : ys) {
    for (const Span1D& x : xs) {
      Tile t;
      t.window = {y.window_start, x.window_start, window, window};
      t.core = {y.core_start, x.core_start, y.core_end - y.core_start,
                x.core_end - x.core_start};
      t.dest = t.core.scaled(scale);
      grid.tiles.push_back(t);
    }
  }
  return grid;
}

Image stitch(const TileGrid& grid, std::span<const Image> tiles) {
  if (tiles.size() != grid.tiles.size()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "stitch: got " + std::to_string(tiles.size()) + " tiles for a " +
                    std::to_string(grid.tiles.size()) + "-tile grid");
  }
  const int s = grid.scale;
  Image out(grid.height * s, grid.width * s);
  for (std::size_t i = 0; i < tiles.size(); ++i) {
    const Tile& t = grid.tiles[i];
    const Image& img = tiles[i];
    if (img.height() != t.window.height * s || img.width() != t.window.width * s) {
      throw Error(ErrorKind::kDimensionMismatch,
                  "stitch: tile " + std::to_string(i) + " is " +
                      std::to_string(img.height()) + "x" +
                      std::to_string(img.width()) + ", expected " +
                      std::to_string(t.window.height * s) + "x" +
                      std::to_string(t.window.width * s));
    }
    const Rect local{(t.core.top - t.window.top) * s,
                     (t.core.left - t.window.left) * s, t.dest.height,
                     t.dest.width};
    paste(out, crop(img, local), t.dest.top, t.dest.left);
  }
  return out;
}

Image tiled_apply(const Image& img, const Model& model, int window, int core,
                  const TilingOptions& options) {
  const TileGrid grid =
      plan_tiles(img.height(), img.width(), window, core, model.scale);
  std::vector<Image> outputs(grid.tiles.size());
  parallel_for(grid.tiles.size(), model.thread_safe ? options.jobs : 1,
               [&](std::size_t i) {
                 const Image input = crop(img, grid.tiles[i].window);
                 outputs[i] = model(input);
                 check_model_output(input, outputs[i], model.scale,
                                    "tile " + std::to_string(i));
               });
  return stitch(grid, outputs);
}

}  // namespace srbench
