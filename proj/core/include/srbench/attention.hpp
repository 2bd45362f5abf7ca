#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace srbench {

// C x H x W real tensor, channel-major.
class FeatureMap {
 public:
  FeatureMap() = default;
  FeatureMap(int channels, int height, int width, double fill = 0.0);

  int channels() const { return channels_; }
  int height() const { return height_; }
  int width() const { return width_; }
  std::size_t plane_size() const {
    return static_cast<std::size_t>(height_) * width_;
  }

  double& at(int c, int y, int x) { return data_[index(c, y, x)]; }
  double at(int c, int y, int x) const { return data_[index(c, y, x)]; }
  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  bool same_shape(const FeatureMap& o) const {
    return channels_ == o.channels_ && height_ == o.height_ && width_ == o.width_;
  }

 private:
  std::size_t index(int c, int y, int x) const {
    return c * plane_size() + static_cast<std::size_t>(y) * width_ + x;
  }

  int channels_ = 0;
  int height_ = 0;
  int width_ = 0;
  std::vector<double> data_;
};

// 1x1 convolution on a vector: out = weight * in + bias, weight row-major
// outputs x inputs.
struct Dense {
  int inputs = 0;
  int outputs = 0;
  std::vector<double> weight;
  std::vector<double> bias;

  std::vector<double> apply(const std::vector<double>& in) const;
  void validate(const char* name) const;
};

// Global average pooling: per-channel spatial mean.
std::vector<double> gap(const FeatureMap& m);

double sigmoid(double x);

// Selective kernel feature fusion over three streams. `down` maps C to
// r = C/8, followed by a leaky rectifier with slope `slope` (0.25, the
// usual PReLU initial value); `up[i]` maps r back to C for stream i.
struct SkffWeights {
  int channels = 0;
  double slope = 0.25;
  Dense down;
  std::array<Dense, 3> up;

  // Uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)) weights and biases.
  static SkffWeights random(int channels, std::uint64_t seed);
  void validate() const;
};

struct SkffResult {
  FeatureMap output;
  std::array<std::vector<double>, 3> attention;  // s1, s2, s3 per channel
};

// L = l1+l2+l3; s = gap(L); z = act(down(s)); v_i = up_i(z);
// (s1, s2, s3) = softmax over the three streams per channel;
// U = s1*l1 + s2*l2 + s3*l3.
SkffResult skff_forward_detailed(const FeatureMap& l1, const FeatureMap& l2,
                                 const FeatureMap& l3, const SkffWeights& w);
FeatureMap skff_forward(const FeatureMap& l1, const FeatureMap& l2,
                        const FeatureMap& l3, const SkffWeights& w);

enum class DauMerge {
  kSum,         // m_ca + m_sa + m
  kConcatConv,  // merge_conv([m_ca; m_sa]) + m, merge_conv: 2C -> C
};

// Dual attention unit. Channel attention: d = gap(m),
// gate = sigmoid(ca_up(relu(ca_down(d)))) with ca_down C -> C/8. Spatial
// attention: f = [channel mean; channel max], gate = sigmoid(conv(f)) with a
// k x k zero-padded convolution (2 -> 1 channels).
struct DauWeights {
  int channels = 0;
  Dense ca_down;
  Dense ca_up;
  int sa_kernel = 5;
  std::vector<double> sa_weight;  // [2][k][k]
  double sa_bias = 0.0;
  DauMerge merge = DauMerge::kSum;
  std::optional<Dense> merge_conv;

  static DauWeights random(int channels, std::uint64_t seed, int sa_kernel = 5);
  void validate() const;
};

struct DauResult {
  FeatureMap output;
  std::vector<double> channel_gate;  // C values
  std::vector<double> spatial_gate;  // H*W values
};

DauResult dau_forward_detailed(const FeatureMap& m, const DauWeights& w);
FeatureMap dau_forward(const FeatureMap& m, const DauWeights& w);

// JSON weight containers; see README for the layout. Malformed input is
// kConfig.
SkffWeights parse_skff_weights(std::string_view json_text);
DauWeights parse_dau_weights(std::string_view json_text);
std::string to_json(const SkffWeights& w);
std::string to_json(const DauWeights& w);

}  // namespace srbench
