#include <cmath>

#include <gtest/gtest.h>
#include <json.hpp>

#include "srbench/attention.hpp"
#include "support.hpp"

namespace srbench {
namespace {

using test::random_feature_map;

double dense_out(const Dense& d, const std::vector<double>& in, int o) {
  double s = d.bias[o];
  for (int i = 0; i < d.inputs; ++i) s += d.weight[o * d.inputs + i] * in[i];
  return s;
}

// Textbook SKFF, one output element at a time.
double oracle_skff(const FeatureMap& a, const FeatureMap& b, const FeatureMap& c,
                   const SkffWeights& w, int ch, int y, int x) {
  const int C = a.channels();
  std::vector<double> s(C, 0.0);
  for (int k = 0; k < C; ++k) {
    for (int i = 0; i < a.height(); ++i)
      for (int j = 0; j < a.width(); ++j) s[k] += a.at(k, i, j) + b.at(k, i, j) + c.at(k, i, j);
    s[k] /= a.height() * a.width();
  }
  std::vector<double> z(C / 8);
  for (int o = 0; o < C / 8; ++o) {
    const double v = dense_out(w.down, s, o);
    z[o] = v > 0 ? v : w.slope * v;
  }
  double e[3];
  for (int i = 0; i < 3; ++i) e[i] = std::exp(dense_out(w.up[i], z, ch));
  const double t = e[0] + e[1] + e[2];
  return (e[0] * a.at(ch, y, x) + e[1] * b.at(ch, y, x) + e[2] * c.at(ch, y, x)) / t;
}

TEST(Skff, MatchesOracle) {
  const SkffWeights w = SkffWeights::random(16, 3);
  const auto a = random_feature_map(16, 5, 6, 1);
  const auto b = random_feature_map(16, 5, 6, 2);
  const auto c = random_feature_map(16, 5, 6, 3);
  const FeatureMap u = skff_forward(a, b, c, w);
  for (int ch : {0, 7, 15})
    for (int y : {0, 4})
      for (int x : {0, 3, 5}) {
        EXPECT_NEAR(u.at(ch, y, x), oracle_skff(a, b, c, w, ch, y, x), 1e-12);
      }
}

TEST(Skff, SoftmaxSumsToOne) {
  for (int run = 0; run < 100; ++run) {
    const SkffWeights w = SkffWeights::random(8 * (1 + run % 4), run);
    const int C = w.channels;
    const auto r = skff_forward_detailed(random_feature_map(C, 4, 4, run),
                                         random_feature_map(C, 4, 4, run + 500),
                                         random_feature_map(C, 4, 4, run + 900), w);
    for (int c = 0; c < C; ++c) {
      EXPECT_NEAR(r.attention[0][c] + r.attention[1][c] + r.attention[2][c], 1.0, 1e-6);
      for (int i = 0; i < 3; ++i) EXPECT_GT(r.attention[i][c], 0.0);
    }
  }
}

TEST(Skff, EqualInputsWithTiedWeightsReturnInput) {
  SkffWeights w = SkffWeights::random(32, 11);
  w.up[1] = w.up[0];
  w.up[2] = w.up[0];
  const auto l = random_feature_map(32, 6, 7, 4);
  const auto r = skff_forward_detailed(l, l, l, w);
  for (std::size_t i = 0; i < l.data().size(); ++i) {
    EXPECT_NEAR(r.output.data()[i], l.data()[i], 1e-6);
  }
  for (int c = 0; c < 32; ++c) EXPECT_NEAR(r.attention[1][c], 1.0 / 3.0, 1e-12);
}

TEST(Skff, LargeLogitsStayFinite) {
  SkffWeights w = SkffWeights::random(8, 1);
  for (double& v : w.up[0].bias) v = 800.0;
  const auto l = random_feature_map(8, 2, 2, 5);
  const auto r = skff_forward_detailed(l, l, l, w);
  for (int c = 0; c < 8; ++c) EXPECT_NEAR(r.attention[0][c], 1.0, 1e-12);
}

TEST(Skff, Validation) {
  EXPECT_SRBENCH_ERROR(SkffWeights::random(12, 1), ErrorKind::kInvalidArgument);
  const SkffWeights w = SkffWeights::random(8, 1);
  const auto a = random_feature_map(8, 3, 3, 1);
  EXPECT_SRBENCH_ERROR(skff_forward(a, a, random_feature_map(8, 3, 4, 2), w),
                       ErrorKind::kDimensionMismatch);
  EXPECT_SRBENCH_ERROR(skff_forward(random_feature_map(16, 3, 3, 1), random_feature_map(16, 3, 3, 1),
                                    random_feature_map(16, 3, 3, 1), w),
                       ErrorKind::kDimensionMismatch);
  SkffWeights broken = w;
  broken.down.bias.pop_back();
  EXPECT_SRBENCH_ERROR(broken.validate(), ErrorKind::kInvalidArgument);
}

double sigmoid_ref(double x) { return 1.0 / (1.0 + std::exp(-x)); }

TEST(Dau, MatchesOracleWithSumMerge) {
  const DauWeights w = DauWeights::random(16, 2, 3);
  const auto m = random_feature_map(16, 4, 5, 6);
  const auto r = dau_forward_detailed(m, w);
  const int C = 16;
  const int H = 4;
  const int W = 5;

  std::vector<double> d(C);
  for (int c = 0; c < C; ++c) {
    for (int y = 0; y < H; ++y)
      for (int x = 0; x < W; ++x) d[c] += m.at(c, y, x);
    d[c] /= H * W;
  }
  std::vector<double> hidden(C / 8);
  for (int o = 0; o < C / 8; ++o) hidden[o] = std::max(0.0, dense_out(w.ca_down, d, o));

  for (int y = 0; y < H; ++y)
    for (int x = 0; x < W; ++x) {
      double acc = w.sa_bias;
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
          const int yy = y + dy;
          const int xx = x + dx;
          if (yy < 0 || yy >= H || xx < 0 || xx >= W) continue;
          double mean = 0.0;
          double top = -1e300;
          for (int c = 0; c < C; ++c) {
            mean += m.at(c, yy, xx);
            top = std::max(top, m.at(c, yy, xx));
          }
          mean /= C;
          acc += w.sa_weight[(0 * 3 + dy + 1) * 3 + dx + 1] * mean +
                 w.sa_weight[(1 * 3 + dy + 1) * 3 + dx + 1] * top;
        }
      const double sg = sigmoid_ref(acc);
      EXPECT_NEAR(r.spatial_gate[y * W + x], sg, 1e-12);
      for (int c : {0, 9}) {
        const double cg = sigmoid_ref(dense_out(w.ca_up, hidden, c));
        EXPECT_NEAR(r.channel_gate[c], cg, 1e-12);
        const double v = m.at(c, y, x);
        EXPECT_NEAR(r.output.at(c, y, x), v * cg + v * sg + v, 1e-12);
      }
    }
}

TEST(Dau, GatesInOpenUnitInterval) {
  for (int run = 0; run < 30; ++run) {
    const DauWeights w = DauWeights::random(8, run);
    const auto r = dau_forward_detailed(random_feature_map(8, 6, 6, run), w);
    for (double g : r.channel_gate) {
      EXPECT_GT(g, 0.0);
      EXPECT_LT(g, 1.0);
    }
    for (double g : r.spatial_gate) {
      EXPECT_GT(g, 0.0);
      EXPECT_LT(g, 1.0);
    }
  }
}

TEST(Dau, ConcatMergeUsesMergeConv) {
  DauWeights w = DauWeights::random(8, 3);
  w.merge = DauMerge::kConcatConv;
  EXPECT_SRBENCH_ERROR(w.validate(), ErrorKind::kInvalidArgument);
  // merge_conv = [I | I] reproduces the sum merge.
  Dense merge{16, 8, std::vector<double>(16 * 8, 0.0), std::vector<double>(8, 0.0)};
  for (int c = 0; c < 8; ++c) {
    merge.weight[c * 16 + c] = 1.0;
    merge.weight[c * 16 + 8 + c] = 1.0;
  }
  w.merge_conv = merge;
  const auto m = random_feature_map(8, 3, 3, 7);
  DauWeights sum = w;
  sum.merge = DauMerge::kSum;
  const FeatureMap a = dau_forward(m, w);
  const FeatureMap b = dau_forward(m, sum);
  for (std::size_t i = 0; i < a.data().size(); ++i) EXPECT_NEAR(a.data()[i], b.data()[i], 1e-12);
}

TEST(Dau, ZeroInputGivesZeroOutput) {
  const FeatureMap z = dau_forward(FeatureMap(8, 4, 4), DauWeights::random(8, 1));
  for (double v : z.data()) EXPECT_EQ(v, 0.0);
}

TEST(WeightContainers, RoundTrip) {
  const SkffWeights s = SkffWeights::random(16, 9);
  const SkffWeights s2 = parse_skff_weights(to_json(s));
  EXPECT_EQ(s2.down.weight, s.down.weight);
  EXPECT_EQ(s2.up[2].bias, s.up[2].bias);
  EXPECT_EQ(s2.slope, s.slope);

  DauWeights d = DauWeights::random(8, 9, 5);
  d.merge = DauMerge::kConcatConv;
  d.merge_conv = Dense{16, 8, std::vector<double>(128, 0.01), std::vector<double>(8, 0.0)};
  const DauWeights d2 = parse_dau_weights(to_json(d));
  EXPECT_EQ(d2.sa_weight, d.sa_weight);
  EXPECT_EQ(d2.merge, DauMerge::kConcatConv);
  ASSERT_TRUE(d2.merge_conv.has_value());
  EXPECT_EQ(d2.merge_conv->weight, d.merge_conv->weight);
}

TEST(WeightContainers, RejectsMalformed) {
  const std::string skff = to_json(SkffWeights::random(8, 1));
  EXPECT_SRBENCH_ERROR(parse_dau_weights(skff), ErrorKind::kConfig);
  EXPECT_SRBENCH_ERROR(parse_skff_weights("{"), ErrorKind::kConfig);
  auto j = nlohmann::json::parse(skff);
  j["up"].erase(0);
  EXPECT_SRBENCH_ERROR(parse_skff_weights(j.dump()), ErrorKind::kConfig);
  j = nlohmann::json::parse(skff);
  j["down"]["weight"].erase(0);
  EXPECT_SRBENCH_ERROR(parse_skff_weights(j.dump()), ErrorKind::kConfig);
  auto dj = nlohmann::json::parse(to_json(DauWeights::random(8, 1)));
  dj["merge"] = "product";
  EXPECT_SRBENCH_ERROR(parse_dau_weights(dj.dump()), ErrorKind::kConfig);
}

}  // namespace
}  // namespace srbench
