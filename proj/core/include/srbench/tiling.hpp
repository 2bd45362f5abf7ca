#pragma once

#include <span>
#include <vector>

#include "srbench/image.hpp"
#include "srbench/model.hpp"

namespace srbench {

struct Tile {
  Rect window;  // model input, LR coordinates
  Rect core;    // part of the window kept when stitching, LR coordinates
  Rect dest;    // core * scale, output coordinates
};

// Overlap tiling of an h x w image.
//
// Along each axis windows start at multiples of `core` (the stride); the
// last windows are shifted inward so they stay inside the image. Each
// boundary between neighbouring cores is the midpoint of their windows'
// overlap, which is (window-core)/2 past the stride point for unshifted
// windows; the first core extends to the leading image edge, the last to the
// trailing edge, so the cores partition the image. Windows whose core is
// empty are dropped.
struct TileGrid {
  int height = 0;
  int width = 0;
  int window = 0;
  int core = 0;
  int scale = 1;
  int rows = 0;
  int cols = 0;
  std::vector<Tile> tiles;  // row-major

  // Largest radius (in output pixels) a local operator may have and still
  // commute with this tiling.
  int locality_bound() const { return (window - core) / 2 * scale; }
};

// scale is 1 (debug/identity), 2, 3 or 4.
TileGrid plan_tiles(int height, int width, int window, int core, int scale);

// Assembles model outputs; tiles[i] must be scale times tile i's window.
Image stitch(const TileGrid& grid, std::span<const Image> tiles);

struct TilingOptions {
  int jobs = 1;  // used only when the model is thread safe
};

Image tiled_apply(const Image& img, const Model& model, int window, int core,
                  const TilingOptions& options = {});

}  // namespace srbench
