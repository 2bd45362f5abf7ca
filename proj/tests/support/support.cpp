#include "support.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <unistd.h>

#include "srbench/png_io.hpp"

namespace srbench::test {

namespace fs = std::filesystem;

namespace {

double unit(std::mt19937& gen) {
  return std::generate_canonical<double, 53>(gen);
}

}  // namespace

Image random_image(int height, int width, std::uint64_t seed) {
  std::mt19937 gen(static_cast<std::uint32_t>(seed * 2654435761u + 17));
  Image img(height, width);
  for (double& v : img.data()) v = unit(gen);
  return img;
}

Image random_image8(int height, int width, std::uint64_t seed) {
  std::mt19937 gen(static_cast<std::uint32_t>(seed * 2246822519u + 3));
  Image img(height, width);
  for (double& v : img.data()) v = static_cast<double>(gen() % 256) / 255.0;
  return img;
}

Raster random_raster(int height, int width, std::uint64_t seed, double lo, double hi) {
  std::mt19937 gen(static_cast<std::uint32_t>(seed * 3266489917u + 5));
  Raster r(height, width);
  for (double& v : r.values()) v = lo + (hi - lo) * unit(gen);
  return r;
}

Image perturbed(const Image& x, double amplitude, std::uint64_t seed) {
  std::mt19937 gen(static_cast<std::uint32_t>(seed * 668265263u + 11));
  Image y = x;
  for (double& v : y.data()) {
    v = std::clamp(v + amplitude * (2.0 * unit(gen) - 1.0), 0.0, 1.0);
  }
  return y;
}

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  path_ = fs::temp_directory_path() /
          ("srbench-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  fs::remove_all(path_);
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path());
  std::ofstream(path, std::ios::binary) << text;
}

double oracle_psnr(const Image& a, const Image& b) {
  double sse = 0.0;
  for (int c = 0; c < 3; ++c)
    for (int y = 0; y < a.height(); ++y)
      for (int x = 0; x < a.width(); ++x) {
        const double d = 255.0 * a.at(c, y, x) - 255.0 * b.at(c, y, x);
        sse += d * d;
      }
  const double mse = sse / (3.0 * a.height() * a.width());
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

double oracle_ssim_channel(const Raster& a, const Raster& b, int window, double sigma) {
  std::vector<double> w(static_cast<std::size_t>(window) * window);
  const int half = window / 2;
  double total = 0.0;
  for (int i = 0; i < window; ++i)
    for (int j = 0; j < window; ++j) {
      const double dy = i - half;
      const double dx = j - half;
      w[i * window + j] = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
      total += w[i * window + j];
    }
  for (double& v : w) v /= total;

  const double c1 = std::pow(0.01 * 255.0, 2);
  const double c2 = std::pow(0.03 * 255.0, 2);
  double sum = 0.0;
  int count = 0;
  for (int top = 0; top + window <= a.height(); ++top)
    for (int left = 0; left + window <= a.width(); ++left) {
      double mx = 0.0;
      double my = 0.0;
      for (int i = 0; i < window; ++i)
        for (int j = 0; j < window; ++j) {
          mx += w[i * window + j] * 255.0 * a(top + i, left + j);
          my += w[i * window + j] * 255.0 * b(top + i, left + j);
        }
      double vx = 0.0;
      double vy = 0.0;
      double cxy = 0.0;
      for (int i = 0; i < window; ++i)
        for (int j = 0; j < window; ++j) {
          const double dx = 255.0 * a(top + i, left + j) - mx;
          const double dy = 255.0 * b(top + i, left + j) - my;
          vx += w[i * window + j] * dx * dx;
          vy += w[i * window + j] * dy * dy;
          cxy += w[i * window + j] * dx * dy;
        }
      sum += ((2 * mx * my + c1) * (2 * cxy + c2)) /
             ((mx * mx + my * my + c1) * (vx + vy + c2));
      ++count;
    }
  return sum / count;
}

double oracle_ssim(const Image& a, const Image& b) {
  double s = 0.0;
  for (int c = 0; c < 3; ++c) s += oracle_ssim_channel(a.channel(c), b.channel(c));
  return s / 3.0;
}

Raster oracle_block_pool(const Raster& r, int factor) {
  Raster out(r.height() / factor, r.width() / factor);
  for (int y = 0; y < out.height(); ++y)
    for (int x = 0; x < out.width(); ++x) {
      double s = 0.0;
      for (int i = 0; i < factor; ++i)
        for (int j = 0; j < factor; ++j) s += r(y * factor + i, x * factor + j);
      out(y, x) = s / (factor * factor);
    }
  return out;
}

Image oracle_block_pool(const Image& img, int factor) {
  Image out(img.height() / factor, img.width() / factor);
  for (int c = 0; c < 3; ++c) out.set_channel(c, oracle_block_pool(img.channel(c), factor));
  return out;
}

Image oracle_transform(const Image& img, int quarter_turns, bool flipped) {
  Image cur = img;
  if (flipped) {
    Image f(cur.height(), cur.width());
    for (int c = 0; c < 3; ++c)
      for (int y = 0; y < cur.height(); ++y)
        for (int x = 0; x < cur.width(); ++x) f.at(c, y, cur.width() - 1 - x) = cur.at(c, y, x);
    cur = f;
  }
  for (int k = 0; k < quarter_turns; ++k) {
    const int h = cur.height();
    Image r(cur.width(), h);
    for (int c = 0; c < 3; ++c)
      for (int y = 0; y < h; ++y)
        for (int x = 0; x < cur.width(); ++x) r.at(c, x, h - 1 - y) = cur.at(c, y, x);
    cur = r;
  }
  return cur;
}

Image box_blur(const Image& img, int radius) {
  const int h = img.height();
  const int w = img.width();
  const double n = 2.0 * radius + 1.0;
  Image horiz(h, w);
  Image out(h, w);
  for (int c = 0; c < 3; ++c) {
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        double s = 0.0;
        for (int d = -radius; d <= radius; ++d) s += img.at(c, y, std::clamp(x + d, 0, w - 1));
        horiz.at(c, y, x) = s / n;
      }
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        double s = 0.0;
        for (int d = -radius; d <= radius; ++d) s += horiz.at(c, std::clamp(y + d, 0, h - 1), x);
        out.at(c, y, x) = s / n;
      }
  }
  return out;
}

Model identity_model() {
  return Model{1, [](const Image& img) { return img; }, true};
}

Model blur_model(int radius) {
  return Model{1, [radius](const Image& img) { return box_blur(img, radius); }, true};
}

Model upscale_blur_model(int scale, int radius) {
  return Model{scale,
               [scale, radius](const Image& img) {
                 return box_blur(upscale_nearest(img, scale), radius);
               },
               true};
}

FeatureMap random_feature_map(int c, int h, int w, std::uint64_t seed) {
  std::mt19937 gen(static_cast<std::uint32_t>(seed * 374761393u + 7));
  FeatureMap m(c, h, w);
  for (double& v : m.data()) v = 2.0 * unit(gen) - 1.0;
  return m;
}

double max_abs_diff(const Image& a, const Image& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  }
  return m;
}

double max_abs_diff(const Raster& a, const Raster& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i) {
    m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
  }
  return m;
}

void write_synthetic_dataset(const fs::path& root, int count, int lr_height, int lr_width,
                             int scale, std::uint64_t seed) {
  for (const char* sub : {"lr", "hr", "sr"}) fs::create_directories(root / sub);
  for (int i = 0; i < count; ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "img_%03d.png", i);
    const int h = lr_height * scale;
    const int w = lr_width * scale;
    const Image noise = random_image(h, w, seed + 7919 * i);
    Image hr(h, w);
    for (int c = 0; c < 3; ++c)
      for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
          const double wave = 0.5 + 0.3 * std::sin(0.11 * x * (c + 1) + 0.07 * y + i);
          hr.at(c, y, x) = std::clamp(wave + 0.2 * (noise.at(c, y, x) - 0.5), 0.0, 1.0);
        }
    hr = hr.quantized();
    save_png(hr, root / "hr" / name);
    save_png(downscale_box(hr, scale), root / "lr" / name);
    save_png(perturbed(hr, 0.05, seed + 31 * i + 1), root / "sr" / name);
  }
}

}  // namespace srbench::test
