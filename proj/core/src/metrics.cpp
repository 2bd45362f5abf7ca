#include "srbench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "srbench/error.hpp"

namespace srbench {

namespace {

// Separable "valid" correlation of an h x w plane with taps x taps.
std::vector<double> valid_filter(std::span<const double> src, int h, int w,
                                 std::span<const double> taps) {
  const int k = static_cast<int>(taps.size());
  const int ow = w - k + 1;
  const int oh = h - k + 1;
  std::vector<double> horiz(static_cast<std::size_t>(h) * ow);
  for (int y = 0; y < h; ++y) {
    const double* row = src.data() + static_cast<std::size_t>(y) * w;
    double* out = horiz.data() + static_cast<std::size_t>(y) * ow;
    for (int x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int i = 0; i < k; ++i) acc += taps[i] * row[x + i];
      out[x] = acc;
    }
  }
  std::vector<double> result(static_cast<std::size_t>(oh) * ow, 0.0);
  for (int y = 0; y < oh; ++y) {
    double* out = result.data() + static_cast<std::size_t>(y) * ow;
    for (int i = 0; i < k; ++i) {
      const double t = taps[i];
      const double* in = horiz.data() + static_cast<std::size_t>(y + i) * ow;
      for (int x = 0; x < ow; ++x) out[x] += t * in[x];
    }
  }
  return result;
}

void require_window_fits(int h, int w, const SsimConfig& cfg) {
  if (std::min(h, w) < cfg.window_size) {
    throw Error(ErrorKind::kInvalidArgument,
                "image " + std::to_string(h) + "x" + std::to_string(w) +
                    " smaller than the " + std::to_string(cfg.window_size) +
                    "x" + std::to_string(cfg.window_size) + " SSIM window");
  }
}

}  // namespace

void SsimConfig::validate() const {
  if (window_size < 1 || window_size % 2 == 0) {
    throw Error(ErrorKind::kInvalidArgument,
                "SSIM window size must be odd and positive");
  }
  if (!(sigma > 0.0) || !(dynamic_range > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument,
                "SSIM sigma and dynamic range must be positive");
  }
  if (ms_weights.empty() ||
      std::ranges::any_of(ms_weights, [](double v) { return !(v >= 0.0); })) {
    throw Error(ErrorKind::kInvalidArgument,
                "MS-SSIM weights must be a non-empty list of non-negative "
                "values");
  }
  const double total = std::accumulate(ms_weights.begin(), ms_weights.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-3) {
    throw Error(ErrorKind::kInvalidArgument,
                "MS-SSIM weights sum to " + std::to_string(total) +
                    ", expected 1");
  }
}

std::vector<double> SsimConfig::gaussian_taps() const {
  std::vector<double> taps(window_size);
  const int half = window_size / 2;
  double total = 0.0;
  for (int i = 0; i < window_size; ++i) {
    const double d = i - half;
    taps[i] = std::exp(-(d * d) / (2.0 * sigma * sigma));
    total += taps[i];
  }
  for (double& t : taps) t /= total;
  return taps;
}

double psnr_rgb(const Image& sr, const Image& hr) {
  require_same_dims(sr, hr, "psnr");
  const auto a = sr.data();
  const auto b = hr.data();
  double sse = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = (a[i] - b[i]) * PixelDepthPolicy::kMaxValue;
    sse += d * d;
  }
  if (sse == 0.0) return kPsnrInfinity;
  const double mse = sse / static_cast<double>(a.size());
  constexpr double kPeak = PixelDepthPolicy::kMaxValue;
  return 10.0 * std::log10(kPeak * kPeak / mse);
}

SsimTerms ssim_terms(const Raster& a, const Raster& b, const SsimConfig& cfg) {
  if (a.height() != b.height() || a.width() != b.width()) {
    throw Error(ErrorKind::kDimensionMismatch, "ssim: plane sizes differ");
  }
  const int h = a.height();
  const int w = a.width();
  require_window_fits(h, w, cfg);

  const double range = cfg.dynamic_range;
  const std::size_t n = a.size();
  std::vector<double> x(n), y(n), xx(n), yy(n), xy(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = a.values()[i] * range;
    y[i] = b.values()[i] * range;
    xx[i] = x[i] * x[i];
    yy[i] = y[i] * y[i];
    xy[i] = x[i] * y[i];
  }
  const std::vector<double> taps = cfg.gaussian_taps();
  const auto mu1 = valid_filter(x, h, w, taps);
  const auto mu2 = valid_filter(y, h, w, taps);
  const auto e11 = valid_filter(xx, h, w, taps);
  const auto e22 = valid_filter(yy, h, w, taps);
  const auto e12 = valid_filter(xy, h, w, taps);

  const double c1 = (cfg.k1 * range) * (cfg.k1 * range);
  const double c2 = (cfg.k2 * range) * (cfg.k2 * range);
  double ssim_sum = 0.0;
  double cs_sum = 0.0;
  for (std::size_t i = 0; i < mu1.size(); ++i) {
    const double m1m2 = mu1[i] * mu2[i];
    const double m1sq = mu1[i] * mu1[i];
    const double m2sq = mu2[i] * mu2[i];
    const double s1 = e11[i] - m1sq;
    const double s2 = e22[i] - m2sq;
    const double s12 = e12[i] - m1m2;
    const double cs = (2.0 * s12 + c2) / (s1 + s2 + c2);
    const double lum = (2.0 * m1m2 + c1) / (m1sq + m2sq + c1);
    ssim_sum += lum * cs;
    cs_sum += cs;
  }
  const auto count = static_cast<double>(mu1.size());
  return {ssim_sum / count, cs_sum / count};
}

double ssim(const Image& sr, const Image& hr, const SsimConfig& cfg) {
  require_same_dims(sr, hr, "ssim");
  cfg.validate();
  require_window_fits(sr.height(), sr.width(), cfg);
  double total = 0.0;
  for (int c = 0; c < Image::kChannels; ++c) {
    total += ssim_terms(sr.channel(c), hr.channel(c), cfg).ssim;
  }
  return total / Image::kChannels;
}

Raster average_pool2(const Raster& r) {
  if (r.height() < 2 || r.width() < 2) {
    throw Error(ErrorKind::kInvalidArgument, "raster too small to pool");
  }
  Raster out(r.height() / 2, r.width() / 2);
  for (int y = 0; y < out.height(); ++y) {
    for (int x = 0; x < out.width(); ++x) {
      out(y, x) = 0.25 * (r(2 * y, 2 * x) + r(2 * y, 2 * x + 1) +
                          r(2 * y + 1, 2 * x) + r(2 * y + 1, 2 * x + 1));
    }
  }
  return out;
}

int ms_ssim_min_size(const SsimConfig& cfg) {
  const int scales = static_cast<int>(cfg.ms_weights.size());
  return cfg.window_size << (scales - 1);
}

double ms_ssim(const Image& sr, const Image& hr, const SsimConfig& cfg) {
  require_same_dims(sr, hr, "ms_ssim");
  cfg.validate();
  const int min_size = ms_ssim_min_size(cfg);
  if (std::min(sr.height(), sr.width()) < min_size) {
    throw Error(ErrorKind::kInvalidArgument,
                "image " + std::to_string(sr.height()) + "x" +
                    std::to_string(sr.width()) + " too small for " +
                    std::to_string(cfg.ms_weights.size()) +
                    "-scale MS-SSIM (needs min side >= " +
                    std::to_string(min_size) + ")");
  }
  const std::size_t scales = cfg.ms_weights.size();
  double total = 0.0;
  for (int c = 0; c < Image::kChannels; ++c) {
    Raster a = sr.channel(c);
    Raster b = hr.channel(c);
    double product = 1.0;
    for (std::size_t s = 0; s < scales; ++s) {
      const SsimTerms t = ssim_terms(a, b, cfg);
      const bool last = s + 1 == scales;
      const double term = std::max(last ? t.ssim : t.cs, 0.0);
      product *= std::pow(term, cfg.ms_weights[s]);
      if (!last) {
        a = average_pool2(a);
        b = average_pool2(b);
      }
    }
    total += product;
  }
  return total / Image::kChannels;
}

double challenge_score(double psnr_avg, double ssim_avg, ScoreMode mode) {
  const double sum = psnr_avg / 50.0 + (ssim_avg - 0.4) / 0.6;
  return mode == ScoreMode::kMean ? 0.5 * sum : sum;
}

}  // namespace srbench
