#include <vector>

#include <gtest/gtest.h>

#include "srbench/tiling.hpp"
#include "support.hpp"

namespace srbench {
namespace {

using test::blur_model;
using test::box_blur;
using test::identity_model;
using test::random_image;
using test::upscale_blur_model;

std::vector<int> core_cover_counts(const TileGrid& g) {
  std::vector<int> count(static_cast<std::size_t>(g.height) * g.width, 0);
  for (const Tile& t : g.tiles)
    for (int y = t.core.top; y < t.core.bottom(); ++y)
      for (int x = t.core.left; x < t.core.right(); ++x) ++count[y * g.width + x];
  return count;
}

void expect_partition(const TileGrid& g) {
  for (int c : core_cover_counts(g)) ASSERT_EQ(c, 1);
  const Rect image{0, 0, g.height, g.width};
  for (const Tile& t : g.tiles) {
    EXPECT_TRUE(image.contains(t.window));
    EXPECT_TRUE(t.window.contains(t.core));
    EXPECT_EQ(t.window.height, g.window);
    EXPECT_EQ(t.window.width, g.window);
    EXPECT_EQ(t.dest, t.core.scaled(g.scale));
  }
}

TEST(PlanTiles, ReferenceGrids) {
  const auto a = plan_tiles(380, 380, 80, 60, 2);
  EXPECT_EQ(a.rows, 7);
  EXPECT_EQ(a.cols, 7);
  expect_partition(a);
  EXPECT_EQ(a.locality_bound(), 20);

  const auto b = plan_tiles(192, 192, 120, 110, 2);
  EXPECT_EQ(b.rows, 2);
  EXPECT_EQ(b.cols, 2);
  expect_partition(b);
  EXPECT_EQ(b.locality_bound(), 10);
}

TEST(PlanTiles, CoreKeepsMarginAwayFromImageEdges) {
  for (int len : {80, 81, 139, 140, 141, 200, 257, 380, 500}) {
    const auto g = plan_tiles(len, 97, 80, 60, 1);
    expect_partition(g);
    const int m = (g.window - g.core) / 2;
    for (const Tile& t : g.tiles) {
      if (t.core.top > 0) {
        EXPECT_GE(t.core.top - t.window.top, m) << len;
      }
      if (t.core.bottom() < len) {
        EXPECT_GE(t.window.bottom() - t.core.bottom(), m) << len;
      }
      if (t.core.left > 0) {
        EXPECT_GE(t.core.left - t.window.left, m) << len;
      }
      if (t.core.right() < 97) {
        EXPECT_GE(t.window.right() - t.core.right(), m) << len;
      }
    }
  }
}

TEST(PlanTiles, ManyShapesPartition) {
  for (int h = 30; h < 90; h += 7)
    for (int w = 30; w < 90; w += 11)
      for (auto [win, core] : {std::pair{30, 20}, std::pair{30, 30}, std::pair{25, 10}}) {
        expect_partition(plan_tiles(h, w, win, core, 3));
      }
}

TEST(PlanTiles, WindowEqualsImageIsSingleTile) {
  const auto g = plan_tiles(380, 380, 380, 380, 2);
  EXPECT_EQ(g.tiles.size(), 1u);
  expect_partition(g);
}

TEST(PlanTiles, Preconditions) {
  EXPECT_SRBENCH_ERROR(plan_tiles(100, 100, 80, 60, 5), ErrorKind::kInvalidArgument);
  EXPECT_SRBENCH_ERROR(plan_tiles(100, 100, 80, 90, 2), ErrorKind::kInvalidArgument);
  EXPECT_SRBENCH_ERROR(plan_tiles(100, 100, 80, 0, 2), ErrorKind::kInvalidArgument);
  EXPECT_SRBENCH_ERROR(plan_tiles(70, 100, 80, 60, 2), ErrorKind::kInvalidArgument);
}

TEST(TiledApply, IdentityStitchIsBitExact) {
  const Image img = random_image(380, 380, 1);
  EXPECT_EQ(tiled_apply(img, identity_model(), 80, 60), img);
  const Image small = random_image(192, 192, 2);
  EXPECT_EQ(tiled_apply(small, identity_model(), 120, 110), small);
}

TEST(TiledApply, NearestNeighbourMatchesWholeImage) {
  const Image img = random_image(150, 133, 3);
  const Model nn = nearest_neighbor_model(3);
  EXPECT_EQ(tiled_apply(img, nn, 64, 40, {3}), nn(img));
}

TEST(TiledApply, LocalOperatorCommutesUpToBound) {
  const Image img = random_image(200, 180, 4);
  const int bound = plan_tiles(200, 180, 80, 60, 1).locality_bound();
  ASSERT_EQ(bound, 10);
  EXPECT_EQ(tiled_apply(img, blur_model(bound), 80, 60), box_blur(img, bound));
  EXPECT_EQ(tiled_apply(img, blur_model(3), 80, 60), box_blur(img, 3));
  EXPECT_NE(tiled_apply(img, blur_model(bound + 1), 80, 60), box_blur(img, bound + 1));
}

TEST(TiledApply, LocalityBoundScalesWithOutput) {
  const Image img = random_image(130, 130, 5);
  const int bound = plan_tiles(130, 130, 50, 40, 2).locality_bound();
  ASSERT_EQ(bound, 10);
  const auto whole = [&](int r) { return box_blur(upscale_nearest(img, 2), r); };
  EXPECT_EQ(tiled_apply(img, upscale_blur_model(2, bound), 50, 40), whole(bound));
  EXPECT_NE(tiled_apply(img, upscale_blur_model(2, bound + 1), 50, 40), whole(bound + 1));
}

TEST(TiledApply, ParallelMatchesSerial) {
  const Image img = random_image(120, 100, 6);
  const Model m = upscale_blur_model(2, 4);
  EXPECT_EQ(tiled_apply(img, m, 40, 30, {1}), tiled_apply(img, m, 40, 30, {4}));
}

TEST(Stitch, Validation) {
  const auto g = plan_tiles(100, 100, 60, 40, 1);
  EXPECT_SRBENCH_ERROR(stitch(g, std::vector<Image>(1, Image(60, 60))),
                       ErrorKind::kDimensionMismatch);
  EXPECT_SRBENCH_ERROR(stitch(g, std::vector<Image>(g.tiles.size(), Image(59, 60))),
                       ErrorKind::kDimensionMismatch);
  const Model bad{2, [](const Image& i) { return i; }, true};
  EXPECT_SRBENCH_ERROR(tiled_apply(Image(100, 100), bad, 60, 40), ErrorKind::kModelFailure);
}

}  // namespace
}  // namespace srbench
