#include "srbench/attention.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <json.hpp>

#include "srbench/error.hpp"
#include "srbench/rng.hpp"

namespace srbench {

namespace {

using nlohmann::json;

void require_same_shape(const FeatureMap& a, const FeatureMap& b,
                        const char* what) {
  if (!a.same_shape(b)) {
    throw Error(ErrorKind::kDimensionMismatch,
                std::string(what) + ": feature map shapes differ");
  }
}

Dense random_dense(int inputs, int outputs, Rng& rng) {
  Dense d{inputs, outputs, std::vector<double>(static_cast<std::size_t>(inputs) * outputs),
          std::vector<double>(outputs)};
  const double bound = 1.0 / std::sqrt(static_cast<double>(inputs));
  for (double& v : d.weight) v = rng.uniform(-bound, bound);
  for (double& v : d.bias) v = rng.uniform(-bound, bound);
  return d;
}

json dense_to_json(const Dense& d) {
  return {{"inputs", d.inputs}, {"outputs", d.outputs}, {"weight", d.weight},
          {"bias", d.bias}};
}

Dense dense_from_json(const json& j) {
  return Dense{j.at("inputs").get<int>(), j.at("outputs").get<int>(),
               j.at("weight").get<std::vector<double>>(),
               j.at("bias").get<std::vector<double>>()};
}

template <typename Fn>
auto parse_container(std::string_view text, const char* kind, Fn&& build) {
  try {
    const json j = json::parse(text);
    if (j.value("kind", std::string()) != kind) {
      throw Error(ErrorKind::kConfig,
                  std::string("weight container kind must be \"") + kind + "\"");
    }
    auto w = build(j);
    w.validate();
    return w;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kConfig,
                std::string("malformed ") + kind + " weights: " + e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kConfig) throw;
    throw Error(ErrorKind::kConfig, e.what());
  }
}

}  // namespace

FeatureMap::FeatureMap(int channels, int height, int width, double fill)
    : channels_(channels), height_(height), width_(width) {
  if (channels < 1 || height < 1 || width < 1) {
    throw Error(ErrorKind::kInvalidArgument, "feature map dimensions must be positive");
  }
  data_.assign(static_cast<std::size_t>(channels) * plane_size(), fill);
}

std::vector<double> Dense::apply(const std::vector<double>& in) const {
  std::vector<double> out(bias);
  for (int o = 0; o < outputs; ++o) {
    const double* row = weight.data() + static_cast<std::size_t>(o) * inputs;
    for (int i = 0; i < inputs; ++i) out[o] += row[i] * in[i];
  }
  return out;
}

void Dense::validate(const char* name) const {
  if (inputs < 1 || outputs < 1 ||
      weight.size() != static_cast<std::size_t>(inputs) * outputs ||
      bias.size() != static_cast<std::size_t>(outputs)) {
    throw Error(ErrorKind::kInvalidArgument,
                std::string("layer '") + name + "' has inconsistent sizes");
  }
}

std::vector<double> gap(const FeatureMap& m) {
  std::vector<double> out(m.channels());
  const std::size_t n = m.plane_size();
  for (int c = 0; c < m.channels(); ++c) {
    double sum = 0.0;
    const double* p = m.data().data() + c * n;
    for (std::size_t i = 0; i < n; ++i) sum += p[i];
    out[c] = sum / static_cast<double>(n);
  }
  return out;
}

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

SkffWeights SkffWeights::random(int channels, std::uint64_t seed) {
  if (channels < 8 || channels % 8 != 0) {
    throw Error(ErrorKind::kInvalidArgument, "SKFF channels must be a positive multiple of 8");
  }
  Rng rng = make_rng(seed);
  const int r = channels / 8;
  SkffWeights w;
  w.channels = channels;
  w.down = random_dense(channels, r, rng);
  for (Dense& up : w.up) up = random_dense(r, channels, rng);
  return w;
}

void SkffWeights::validate() const {
  if (channels < 8 || channels % 8 != 0) {
    throw Error(ErrorKind::kInvalidArgument, "SKFF channels must be a positive multiple of 8");
  }
  const int r = channels / 8;
  down.validate("down");
  if (down.inputs != channels || down.outputs != r) {
    throw Error(ErrorKind::kInvalidArgument, "SKFF down layer must map C to C/8");
  }
  for (const Dense& u : up) {
    u.validate("up");
    if (u.inputs != r || u.outputs != channels) {
      throw Error(ErrorKind::kInvalidArgument, "SKFF up layers must map C/8 to C");
    }
  }
}

SkffResult skff_forward_detailed(const FeatureMap& l1, const FeatureMap& l2,
                                 const FeatureMap& l3, const SkffWeights& w) {
  require_same_shape(l1, l2, "skff");
  require_same_shape(l1, l3, "skff");
  w.validate();
  if (l1.channels() != w.channels) {
    throw Error(ErrorKind::kDimensionMismatch, "skff: channel count does not match weights");
  }

  FeatureMap sum(l1.channels(), l1.height(), l1.width());
  for (std::size_t i = 0; i < sum.data().size(); ++i) {
    sum.data()[i] = l1.data()[i] + l2.data()[i] + l3.data()[i];
  }
  std::vector<double> z = w.down.apply(gap(sum));
  for (double& v : z) v = v >= 0.0 ? v : w.slope * v;

  std::array<std::vector<double>, 3> logits;
  for (int i = 0; i < 3; ++i) logits[i] = w.up[i].apply(z);

  SkffResult result{FeatureMap(l1.channels(), l1.height(), l1.width()), {}};
  for (auto& a : result.attention) a.resize(l1.channels());
  for (int c = 0; c < l1.channels(); ++c) {
    const double top = std::max({logits[0][c], logits[1][c], logits[2][c]});
    double e[3];
    double total = 0.0;
    for (int i = 0; i < 3; ++i) {
      e[i] = std::exp(logits[i][c] - top);
      total += e[i];
    }
    for (int i = 0; i < 3; ++i) result.attention[i][c] = e[i] / total;
  }

  const std::size_t n = l1.plane_size();
  const FeatureMap* streams[3] = {&l1, &l2, &l3};
  for (int c = 0; c < l1.channels(); ++c) {
    double* out = result.output.data().data() + c * n;
    for (int i = 0; i < 3; ++i) {
      const double s = result.attention[i][c];
      const double* in = streams[i]->data().data() + c * n;
      for (std::size_t p = 0; p < n; ++p) out[p] += s * in[p];
    }
  }
  return result;
}

FeatureMap skff_forward(const FeatureMap& l1, const FeatureMap& l2,
                        const FeatureMap& l3, const SkffWeights& w) {
  return skff_forward_detailed(l1, l2, l3, w).output;
}

DauWeights DauWeights::random(int channels, std::uint64_t seed, int sa_kernel) {
  if (channels < 8 || channels % 8 != 0) {
    throw Error(ErrorKind::kInvalidArgument, "DAU channels must be a positive multiple of 8");
  }
  Rng rng = make_rng(seed);
  DauWeights w;
  w.channels = channels;
  w.ca_down = random_dense(channels, channels / 8, rng);
  w.ca_up = random_dense(channels / 8, channels, rng);
  w.sa_kernel = sa_kernel;
  const int fan_in = 2 * sa_kernel * sa_kernel;
  const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
  w.sa_weight.resize(fan_in);
  for (double& v : w.sa_weight) v = rng.uniform(-bound, bound);
  w.sa_bias = rng.uniform(-bound, bound);
  w.validate();
  return w;
}

void DauWeights::validate() const {
  if (channels < 8 || channels % 8 != 0) {
    throw Error(ErrorKind::kInvalidArgument, "DAU channels must be a positive multiple of 8");
  }
  ca_down.validate("ca_down");
  ca_up.validate("ca_up");
  if (ca_down.inputs != channels || ca_up.outputs != channels ||
      ca_down.outputs != ca_up.inputs) {
    throw Error(ErrorKind::kInvalidArgument, "DAU channel-attention layers must map C -> r -> C");
  }
  if (sa_kernel < 1 || sa_kernel % 2 == 0 ||
      sa_weight.size() != static_cast<std::size_t>(2 * sa_kernel * sa_kernel)) {
    throw Error(ErrorKind::kInvalidArgument,
                "DAU spatial kernel must be odd with 2*k*k weights");
  }
  if (merge == DauMerge::kConcatConv) {
    if (!merge_conv) {
      throw Error(ErrorKind::kInvalidArgument, "concat merge needs merge_conv weights");
    }
    merge_conv->validate("merge_conv");
    if (merge_conv->inputs != 2 * channels || merge_conv->outputs != channels) {
      throw Error(ErrorKind::kInvalidArgument, "merge_conv must map 2C to C");
    }
  }
}

DauResult dau_forward_detailed(const FeatureMap& m, const DauWeights& w) {
  w.validate();
  if (m.channels() != w.channels) {
    throw Error(ErrorKind::kDimensionMismatch, "dau: channel count does not match weights");
  }
  const int C = m.channels();
  const int H = m.height();
  const int W = m.width();
  const std::size_t n = m.plane_size();

  std::vector<double> hidden = w.ca_down.apply(gap(m));
  for (double& v : hidden) v = std::max(v, 0.0);
  std::vector<double> channel_gate = w.ca_up.apply(hidden);
  for (double& v : channel_gate) v = sigmoid(v);

  // Pooled [mean; max] descriptor along channels.
  std::vector<double> pooled(2 * n);
  for (std::size_t p = 0; p < n; ++p) {
    double sum = 0.0;
    double top = m.data()[p];
    for (int c = 0; c < C; ++c) {
      const double v = m.data()[c * n + p];
      sum += v;
      top = std::max(top, v);
    }
    pooled[p] = sum / C;
    pooled[n + p] = top;
  }
  std::vector<double> spatial_gate(n);
  const int k = w.sa_kernel;
  const int half = k / 2;
  for (int y = 0; y < H; ++y) {
    for (int x = 0; x < W; ++x) {
      double acc = w.sa_bias;
      for (int ch = 0; ch < 2; ++ch) {
        for (int dy = 0; dy < k; ++dy) {
          const int yy = y + dy - half;
          if (yy < 0 || yy >= H) continue;
          for (int dx = 0; dx < k; ++dx) {
            const int xx = x + dx - half;
            if (xx < 0 || xx >= W) continue;
            acc += w.sa_weight[(ch * k + dy) * k + dx] *
                   pooled[ch * n + static_cast<std::size_t>(yy) * W + xx];
          }
        }
      }
      spatial_gate[static_cast<std::size_t>(y) * W + x] = sigmoid(acc);
    }
  }

  DauResult result{FeatureMap(C, H, W), std::move(channel_gate), std::move(spatial_gate)};
  auto& out = result.output.data();
  const auto& in = m.data();
  if (w.merge == DauMerge::kSum) {
    for (int c = 0; c < C; ++c) {
      for (std::size_t p = 0; p < n; ++p) {
        const double v = in[c * n + p];
        out[c * n + p] = v * result.channel_gate[c] + v * result.spatial_gate[p] + v;
      }
    }
  } else {
    std::vector<double> stacked(2 * C);
    for (std::size_t p = 0; p < n; ++p) {
      for (int c = 0; c < C; ++c) {
        const double v = in[c * n + p];
        stacked[c] = v * result.channel_gate[c];
        stacked[C + c] = v * result.spatial_gate[p];
      }
      const std::vector<double> merged = w.merge_conv->apply(stacked);
      for (int c = 0; c < C; ++c) out[c * n + p] = merged[c] + in[c * n + p];
    }
  }
  return result;
}

FeatureMap dau_forward(const FeatureMap& m, const DauWeights& w) {
  return dau_forward_detailed(m, w).output;
}

SkffWeights parse_skff_weights(std::string_view json_text) {
  return parse_container(json_text, "skff", [](const json& j) {
    SkffWeights w;
    w.channels = j.at("channels").get<int>();
    w.slope = j.value("slope", w.slope);
    w.down = dense_from_json(j.at("down"));
    const json& up = j.at("up");
    if (!up.is_array() || up.size() != 3) {
      throw Error(ErrorKind::kConfig, "SKFF \"up\" must list three layers");
    }
    for (int i = 0; i < 3; ++i) w.up[i] = dense_from_json(up[i]);
    return w;
  });
}

DauWeights parse_dau_weights(std::string_view json_text) {
  return parse_container(json_text, "dau", [](const json& j) {
    DauWeights w;
    w.channels = j.at("channels").get<int>();
    w.ca_down = dense_from_json(j.at("ca_down"));
    w.ca_up = dense_from_json(j.at("ca_up"));
    const json& sa = j.at("sa");
    w.sa_kernel = sa.at("kernel").get<int>();
    w.sa_weight = sa.at("weight").get<std::vector<double>>();
    w.sa_bias = sa.at("bias").get<double>();
    const std::string merge = j.value("merge", std::string("sum"));
    if (merge == "sum") {
      w.merge = DauMerge::kSum;
    } else if (merge == "concat_conv") {
      w.merge = DauMerge::kConcatConv;
    } else {
      throw Error(ErrorKind::kConfig, "DAU merge must be \"sum\" or \"concat_conv\"");
    }
    if (j.contains("merge_conv")) w.merge_conv = dense_from_json(j.at("merge_conv"));
    return w;
  });
}

std::string to_json(const SkffWeights& w) {
  json up = json::array();
  for (const Dense& d : w.up) up.push_back(dense_to_json(d));
  const json j = {{"kind", "skff"},         {"channels", w.channels},
                  {"slope", w.slope},       {"down", dense_to_json(w.down)},
                  {"up", up}};
  return j.dump();
}

std::string to_json(const DauWeights& w) {
  json j = {{"kind", "dau"},
            {"channels", w.channels},
            {"ca_down", dense_to_json(w.ca_down)},
            {"ca_up", dense_to_json(w.ca_up)},
            {"sa", {{"kernel", w.sa_kernel}, {"weight", w.sa_weight}, {"bias", w.sa_bias}}},
            {"merge", w.merge == DauMerge::kSum ? "sum" : "concat_conv"}};
  if (w.merge_conv) j["merge_conv"] = dense_to_json(*w.merge_conv);
  return j.dump();
}

}  // namespace srbench
