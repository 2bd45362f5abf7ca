#include "srbench/wavelet.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "srbench/error.hpp"

namespace srbench {

namespace {

HaarStage analyze_once(const Raster& in) {
  const int h = in.height();
  const int w = in.width();
  const int oh = (h + 1) / 2;
  const int ow = (w + 1) / 2;
  HaarStage stage{h, w, Raster(oh, ow), Raster(oh, ow), Raster(oh, ow),
                  Raster(oh, ow)};
  for (int y = 0; y < oh; ++y) {
    const int y0 = 2 * y;
    const int y1 = std::min(y0 + 1, h - 1);
    for (int x = 0; x < ow; ++x) {
      const int x0 = 2 * x;
      const int x1 = std::min(x0 + 1, w - 1);
      const double a = in(y0, x0);
      const double b = in(y0, x1);
      const double c = in(y1, x0);
      const double d = in(y1, x1);
      stage.ll(y, x) = 0.5 * (a + b + c + d);
      stage.lh(y, x) = 0.5 * (a - b + c - d);
      stage.hl(y, x) = 0.5 * (a + b - c - d);
      stage.hh(y, x) = 0.5 * (a - b - c + d);
    }
  }
  return stage;
}

bool band_dims(const Raster& r, int h, int w) {
  return r.height() == h && r.width() == w;
}

Raster synthesize_once(const HaarStage& stage, const Raster& ll) {
  const int h = stage.input_height;
  const int w = stage.input_width;
  const int bh = (h + 1) / 2;
  const int bw = (w + 1) / 2;
  if (h < 1 || w < 1 || !band_dims(ll, bh, bw) || !band_dims(stage.lh, bh, bw) ||
      !band_dims(stage.hl, bh, bw) || !band_dims(stage.hh, bh, bw)) {
    throw Error(ErrorKind::kDimensionMismatch,
                "wavelet bands inconsistent with recorded input size " +
                    std::to_string(h) + "x" + std::to_string(w));
  }
  Raster out(h, w);
  for (int y = 0; y < bh; ++y) {
    for (int x = 0; x < bw; ++x) {
      const double s = ll(y, x);
      const double p = stage.lh(y, x);
      const double q = stage.hl(y, x);
      const double r = stage.hh(y, x);
      // Samples that fell on the replicated border are simply not written.
      const int y0 = 2 * y;
      const int x0 = 2 * x;
      out(y0, x0) = 0.5 * (s + p + q + r);
      if (x0 + 1 < w) out(y0, x0 + 1) = 0.5 * (s - p + q - r);
      if (y0 + 1 < h) {
        out(y0 + 1, x0) = 0.5 * (s + p - q - r);
        if (x0 + 1 < w) out(y0 + 1, x0 + 1) = 0.5 * (s - p - q + r);
      }
    }
  }
  return out;
}

struct LossSums {
  double l1 = 0.0, high = 0.0, low = 0.0;
  double l1_count = 0.0, high_count = 0.0, low_count = 0.0;
};

double abs_diff_sum(const Raster& a, const Raster& b, double scale) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += std::abs(a.values()[i] - b.values()[i]) * scale;
  }
  return s;
}

double sq_diff_sum(const Raster& a, const Raster& b, double scale) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = (a.values()[i] - b.values()[i]) * scale;
    s += d * d;
  }
  return s;
}

void accumulate_loss(const Raster& x, const Raster& y,
                     const WaveletLossOptions& options, LossSums& sums) {
  if (x.height() != y.height() || x.width() != y.width()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "wavelet_loss: " + std::to_string(x.height()) + "x" +
                    std::to_string(x.width()) + " vs " +
                    std::to_string(y.height()) + "x" +
                    std::to_string(y.width()));
  }
  const double scale = options.pixel_scale;
  sums.l1 += abs_diff_sum(x, y, scale);
  sums.l1_count += static_cast<double>(x.size());

  const WaveletPyramid px = haar_analyze(x, options.stages);
  const WaveletPyramid py = haar_analyze(y, options.stages);
  for (std::size_t i = 0; i < px.stages.size(); ++i) {
    const HaarStage& a = px.stages[i];
    const HaarStage& b = py.stages[i];
    sums.high += abs_diff_sum(a.lh, b.lh, scale) + abs_diff_sum(a.hl, b.hl, scale) +
                 abs_diff_sum(a.hh, b.hh, scale);
    sums.high_count += 3.0 * static_cast<double>(a.lh.size());
    sums.low += sq_diff_sum(a.ll, b.ll, scale);
    sums.low_count += static_cast<double>(a.ll.size());
  }
}

WaveletLoss finish(const LossSums& s, double lambda) {
  WaveletLoss out;
  out.raw = {s.l1, s.high, s.low, s.l1 + lambda * (s.low + s.high)};
  const double l1 = s.l1 / s.l1_count;
  const double high = s.high / s.high_count;
  const double low = s.low / s.low_count;
  out.mean = {l1, high, low, l1 + lambda * (low + high)};
  return out;
}

}  // namespace

WaveletPyramid haar_analyze(const Raster& plane, int stages) {
  if (stages < 1) {
    throw Error(ErrorKind::kInvalidArgument, "wavelet stages must be >= 1");
  }
  if (stages >= 31 ||
      std::min(plane.height(), plane.width()) < (1 << stages)) {
    throw Error(ErrorKind::kInvalidArgument,
                "raster " + std::to_string(plane.height()) + "x" +
                    std::to_string(plane.width()) + " too small for " +
                    std::to_string(stages) + " Haar stages");
  }
  WaveletPyramid pyramid;
  pyramid.stages.reserve(stages);
  const Raster* current = &plane;
  for (int s = 0; s < stages; ++s) {
    pyramid.stages.push_back(analyze_once(*current));
    current = &pyramid.stages.back().ll;
  }
  return pyramid;
}

Raster haar_synthesize(const WaveletPyramid& pyramid) {
  if (pyramid.stages.empty()) {
    throw Error(ErrorKind::kDimensionMismatch, "empty wavelet pyramid");
  }
  Raster ll = pyramid.final_ll();
  for (auto it = pyramid.stages.rbegin(); it != pyramid.stages.rend(); ++it) {
    ll = synthesize_once(*it, ll);
  }
  return ll;
}

WaveletLoss wavelet_loss(const Raster& x, const Raster& y,
                         const WaveletLossOptions& options) {
  LossSums sums;
  accumulate_loss(x, y, options, sums);
  return finish(sums, options.lambda);
}

WaveletLoss wavelet_loss(const Image& x, const Image& y,
                         const WaveletLossOptions& options) {
  require_same_dims(x, y, "wavelet_loss");
  LossSums sums;
  for (int c = 0; c < Image::kChannels; ++c) {
    accumulate_loss(x.channel(c), y.channel(c), options, sums);
  }
  return finish(sums, options.lambda);
}

}  // namespace srbench
