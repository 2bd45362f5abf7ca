#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "srbench/attention.hpp"
#include "srbench/augment.hpp"
#include "srbench/ensemble.hpp"
#include "srbench/error.hpp"
#include "srbench/evaluation.hpp"
#include "srbench/leaderboard.hpp"
#include "srbench/losses.hpp"
#include "srbench/model.hpp"
#include "srbench/png_io.hpp"
#include "srbench/tiling.hpp"
#include "srbench/wavelet.hpp"

namespace srbench::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kFileNotFound, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw Error(ErrorKind::kIo, "cannot create directory " + dir.string());
  }
}

// Six decimals keeps loss/demo output stable across runs and platforms.
json fixed6(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::round(v * 1e6) / 1e6;
}

// PNG files of a directory keyed by stem, sorted.
std::map<std::string, fs::path> list_pngs(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw Error(ErrorKind::kFileNotFound, "not a directory: " + dir.string());
  }
  std::map<std::string, fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (ext == ".png") files.emplace(entry.path().stem().string(), entry.path());
  }
  if (files.empty()) throw Error(ErrorKind::kUnmatchedFiles, "no PNG images in " + dir.string());
  return files;
}

ScoreMode parse_score_mode(const std::string& s) {
  return s == "sum" ? ScoreMode::kSum : ScoreMode::kMean;
}

// ---- eval ---------------------------------------------------------------

struct EvalArgs {
  std::string config;
};

int cmd_eval(const EvalArgs& a, std::ostream& out, std::ostream& err) {
  const EvalOutcome outcome = run_eval(fs::path(a.config));
  const MetricReport& r = outcome.report;
  char line[256];
  std::snprintf(line, sizeof(line), "images=%zu psnr_avg=%.3f ssim_avg=%.4f score=%.4f\n",
                r.per_image.size(), round_psnr(r.psnr_avg), round_unit(r.ssim_avg),
                round_unit(r.score));
  out << line;
  if (outcome.entry) {
    out << "team=" << outcome.entry->team << " track=" << to_string(outcome.entry->track)
        << "\n";
  }
  if (r.nonfinite_aggregate()) {
    err << "srbench eval: " << r.nonfinite_psnr_count
        << " image(s) have infinite PSNR (SR identical to HR); aggregate is not "
           "finite. Set \"nonfinite\": \"exclude\" to average finite entries only.\n";
    return exit_code(ErrorKind::kNonFiniteAggregate);
  }
  return kExitOk;
}

// ---- leaderboard ----------------------------------------------------------

struct LeaderboardArgs {
  std::string input;
  std::string track;
  std::string format = "text";
  std::string output;
  std::string score_mode = "mean";
};

int cmd_leaderboard(const LeaderboardArgs& a, std::ostream& out, std::ostream&) {
  const auto tracks = parse_results_csv(read_text(a.input));
  std::vector<LeaderboardEntry> all;
  for (const TrackResults& t : tracks) {
    if (!a.track.empty() && t.track != parse_track(a.track)) continue;
    auto board = build_leaderboard(t.results, t.track, parse_score_mode(a.score_mode));
    all.insert(all.end(), board.begin(), board.end());
  }
  if (all.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "no results for track '" + a.track + "'");
  }
  std::string text;
  if (a.format == "json") {
    text = leaderboard_to_json(all);
  } else if (a.format == "csv") {
    text = leaderboard_to_csv(all);
  } else {
    for (const TrackResults& t : tracks) {
      std::vector<LeaderboardEntry> part;
      for (const auto& e : all) {
        if (e.track == t.track) part.push_back(e);
      }
      if (part.empty()) continue;
      text += std::string("track ") + to_string(t.track) + "\n" + leaderboard_to_text(part);
    }
  }
  if (a.output.empty()) {
    out << text;
  } else {
    write_text_file(a.output, text);
  }
  return kExitOk;
}

// ---- ensemble / fuse / tile-apply ----------------------------------------

struct EnsembleArgs {
  std::string model_cmd;
  int scale = 2;
  std::string in;
  std::string out;
  int transforms = 8;
  int jobs = 1;
};

int cmd_ensemble(const EnsembleArgs& a, std::ostream& out, std::ostream&) {
  const Model model = external_command_model(a.model_cmd, a.scale);
  const auto subset = transform_subset(a.transforms);
  const auto inputs = list_pngs(a.in);
  ensure_dir(a.out);
  for (const auto& [stem, path] : inputs) {
    const Image result = self_ensemble(load_png(path), model, subset, {a.jobs});
    save_png(result, fs::path(a.out) / (stem + ".png"));
    out << stem << " " << result.height() << "x" << result.width() << "\n";
  }
  return kExitOk;
}

struct FuseArgs {
  std::vector<std::string> inputs;
  std::string out;
};

int cmd_fuse(const FuseArgs& a, std::ostream& out, std::ostream&) {
  if (a.inputs.empty()) throw Error(ErrorKind::kInvalidArgument, "fuse needs input directories");
  std::vector<std::map<std::string, fs::path>> dirs;
  for (const auto& d : a.inputs) dirs.push_back(list_pngs(d));
  for (std::size_t i = 1; i < dirs.size(); ++i) {
    std::vector<std::string> diff;
    for (const auto& [stem, p] : dirs[0]) {
      if (!dirs[i].contains(stem)) diff.push_back(stem);
    }
    for (const auto& [stem, p] : dirs[i]) {
      if (!dirs[0].contains(stem)) diff.push_back(stem);
    }
    if (!diff.empty()) {
      std::string msg = "fuse: " + a.inputs[i] + " and " + a.inputs[0] + " differ in:";
      for (const auto& s : diff) msg += " " + s;
      throw Error(ErrorKind::kUnmatchedFiles, msg);
    }
  }
  ensure_dir(a.out);
  for (const auto& [stem, p] : dirs[0]) {
    std::vector<Image> images;
    for (const auto& d : dirs) images.push_back(load_png(d.at(stem)));
    const Image fused = fuse_outputs(images);
    save_png(fused, fs::path(a.out) / (stem + ".png"));
    out << stem << " fused " << images.size() << "\n";
  }
  return kExitOk;
}

struct TileArgs {
  std::string model_cmd;
  int window = 80;
  int core = 60;
  int scale = 2;
  std::string in;
  std::string out;
  int jobs = 1;
};

int cmd_tile_apply(const TileArgs& a, std::ostream& out, std::ostream&) {
  const Model model = external_command_model(a.model_cmd, a.scale);
  const auto inputs = list_pngs(a.in);
  ensure_dir(a.out);
  for (const auto& [stem, path] : inputs) {
    const Image img = load_png(path);
    const TileGrid grid = plan_tiles(img.height(), img.width(), a.window, a.core, a.scale);
    const Image result = tiled_apply(img, model, a.window, a.core, {a.jobs});
    save_png(result, fs::path(a.out) / (stem + ".png"));
    out << stem << " tiles=" << grid.rows << "x" << grid.cols << " " << result.height()
        << "x" << result.width() << "\n";
  }
  return kExitOk;
}

// ---- augment ----------------------------------------------------------------

struct AugmentArgs {
  std::string spec;
  std::string in_lr;
  std::string in_hr;
  std::string out;
};

// Pair i is augmented with partner pair (i+1) mod n; pipeline step k draws
// from a generator seeded with derive_seed(step_k.seed, i).
int cmd_augment(const AugmentArgs& a, std::ostream& out, std::ostream&) {
  const auto specs = parse_aug_pipeline(read_text(a.spec));
  const auto files = pair_directory_images(a.in_lr, a.in_hr);
  std::vector<ImagePair> pairs;
  for (const auto& f : files) pairs.push_back({load_png(f.sr), load_png(f.hr)});

  const fs::path out_dir(a.out);
  ensure_dir(out_dir / "lr");
  ensure_dir(out_dir / "hr");
  json manifest = {{"schema", "srbench.augment_manifest"},
                   {"schema_version", 1},
                   {"pipeline", json::array()},
                   {"images", json::array()}};
  for (const AugSpec& s : specs) manifest["pipeline"].push_back(json::parse(to_json(s)));

  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const ImagePair& partner = pairs[(i + 1) % pairs.size()];
    ImagePair current = pairs[i];
    for (const AugSpec& s : specs) {
      Rng rng = make_rng(derive_seed(s.seed, i));
      current = augment_pair(current, s, &partner, rng);
    }
    save_png(current.lr, out_dir / "lr" / (files[i].id + ".png"));
    save_png(current.hr, out_dir / "hr" / (files[i].id + ".png"));
    char lr_hash[17];
    char hr_hash[17];
    std::snprintf(lr_hash, sizeof(lr_hash), "%016llx",
                  static_cast<unsigned long long>(content_hash(current.lr)));
    std::snprintf(hr_hash, sizeof(hr_hash), "%016llx",
                  static_cast<unsigned long long>(content_hash(current.hr)));
    manifest["images"].push_back({{"id", files[i].id}, {"lr_hash", lr_hash}, {"hr_hash", hr_hash}});
    out << files[i].id << " lr=" << lr_hash << " hr=" << hr_hash << "\n";
  }
  write_text_file(out_dir / "manifest.json", manifest.dump(2) + "\n");
  return kExitOk;
}

// ---- wavelet-loss / loss-probe ---------------------------------------------

struct WaveletArgs {
  std::string x;
  std::string y;
  int stages = 2;
  double lambda = 1.0;
  double pixel_scale = 1.0;
};

json loss_terms_json(const WaveletLossTerms& t) {
  return {{"total", fixed6(t.total)}, {"high", fixed6(t.high)}, {"low", fixed6(t.low)},
          {"l1", fixed6(t.l1)}};
}

int cmd_wavelet_loss(const WaveletArgs& a, std::ostream& out, std::ostream&) {
  const Image x = load_png(a.x);
  const Image y = load_png(a.y);
  const WaveletLoss loss = wavelet_loss(x, y, {a.stages, a.lambda, a.pixel_scale});
  json doc = loss_terms_json(loss.raw);
  doc["normalized"] = loss_terms_json(loss.mean);
  doc["stages"] = a.stages;
  doc["lambda"] = a.lambda;
  doc["pixel_scale"] = a.pixel_scale;
  out << doc.dump(2) << "\n";
  return kExitOk;
}

struct LossProbeArgs {
  std::string x;
  std::string y;
  std::string preset = "oppo";
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> gamma;
  std::optional<double> vgg;
  double pixel_scale = 1.0;
};

int cmd_loss_probe(const LossProbeArgs& a, std::ostream& out, std::ostream&) {
  const Image x = load_png(a.x);
  const Image y = load_png(a.y);
  require_same_dims(x, y, "loss-probe");
  LossWeights w = LossWeights::preset(parse_loss_preset(a.preset));
  if (a.alpha) w.alpha = *a.alpha;
  if (a.beta) w.beta = *a.beta;
  if (a.gamma) w.gamma = *a.gamma;

  const SsimConfig cfg;
  LossTerms terms;
  terms.l1 = l1_distance(x, y, a.pixel_scale);
  terms.ssim_loss = ssim_loss(x, y, cfg);
  if (std::min(x.height(), x.width()) >= ms_ssim_min_size(cfg)) {
    terms.ms_ssim_loss = ms_ssim_loss(x, y, cfg);
  }
  terms.vgg = a.vgg;
  auto opt = [](const std::optional<double>& v) { return v ? fixed6(*v) : json(nullptr); };
  json doc = {
      {"preset", to_string(w.mode)},
      {"weights", {{"alpha", w.alpha}, {"beta", w.beta}, {"gamma", w.gamma}}},
      {"pixel_scale", a.pixel_scale},
      {"gamma_term", w.mode == LossPreset::kOppo ? "ssim_loss" : "vgg"},
      {"terms",
       {{"l1", opt(terms.l1)},
        {"ssim_loss", opt(terms.ssim_loss)},
        {"ms_ssim_loss", opt(terms.ms_ssim_loss)},
        {"vgg", opt(terms.vgg)}}},
  };
  doc["composite"] = fixed6(combine_loss_terms(terms, w));
  out << doc.dump(2) << "\n";
  return kExitOk;
}

// ---- attention demos ---------------------------------------------------------

struct DemoArgs {
  int channels = 64;
  int height = 16;
  int width = 16;
  std::uint64_t seed = 1;
  int runs = 100;
  std::string weights;
};

FeatureMap random_map(int c, int h, int w, Rng& rng) {
  FeatureMap m(c, h, w);
  for (double& v : m.data()) v = rng.uniform(-1.0, 1.0);
  return m;
}

int report_checks(const json& checks, std::ostream& out) {
  bool ok = true;
  for (const auto& [name, c] : checks.items()) ok = ok && c.at("pass").get<bool>();
  out << json{{"checks", checks}, {"pass", ok}}.dump(2) << "\n";
  return ok ? kExitOk : kExitCheckFailed;
}

int cmd_skff_demo(const DemoArgs& a, std::ostream& out, std::ostream&) {
  const SkffWeights w = a.weights.empty() ? SkffWeights::random(a.channels, a.seed)
                                          : parse_skff_weights(read_text(a.weights));
  double worst_sum = 0.0;
  for (int run = 0; run < a.runs; ++run) {
    Rng rng = make_rng(derive_seed(a.seed, run));
    const FeatureMap l1 = random_map(w.channels, a.height, a.width, rng);
    const FeatureMap l2 = random_map(w.channels, a.height, a.width, rng);
    const FeatureMap l3 = random_map(w.channels, a.height, a.width, rng);
    const SkffResult r = skff_forward_detailed(l1, l2, l3, w);
    for (int c = 0; c < w.channels; ++c) {
      const double s = r.attention[0][c] + r.attention[1][c] + r.attention[2][c];
      worst_sum = std::max(worst_sum, std::abs(s - 1.0));
    }
  }
  // Equal streams with tied upscale weights must return the stream itself.
  SkffWeights tied = w;
  tied.up[1] = tied.up[0];
  tied.up[2] = tied.up[0];
  Rng rng = make_rng(a.seed);
  const FeatureMap l = random_map(w.channels, a.height, a.width, rng);
  const FeatureMap u = skff_forward(l, l, l, tied);
  double worst_sym = 0.0;
  for (std::size_t i = 0; i < l.data().size(); ++i) {
    worst_sym = std::max(worst_sym, std::abs(u.data()[i] - l.data()[i]));
  }
  const json checks = {
      {"softmax_sums_to_one", {{"max_error", worst_sum}, {"tolerance", 1e-6}, {"pass", worst_sum <= 1e-6}}},
      {"equal_inputs_identity", {{"max_error", worst_sym}, {"tolerance", 1e-6}, {"pass", worst_sym <= 1e-6}}},
  };
  return report_checks(checks, out);
}

int cmd_dau_demo(const DemoArgs& a, std::ostream& out, std::ostream&) {
  const DauWeights w = a.weights.empty() ? DauWeights::random(a.channels, a.seed)
                                         : parse_dau_weights(read_text(a.weights));
  bool gates_open = true;
  bool sign_kept = true;
  double min_gate = 1.0;
  double max_gate = 0.0;
  for (int run = 0; run < a.runs; ++run) {
    Rng rng = make_rng(derive_seed(a.seed, run));
    const FeatureMap m = random_map(w.channels, a.height, a.width, rng);
    const DauResult r = dau_forward_detailed(m, w);
    for (const auto* gates : {&r.channel_gate, &r.spatial_gate}) {
      for (double g : *gates) {
        gates_open = gates_open && g > 0.0 && g < 1.0;
        min_gate = std::min(min_gate, g);
        max_gate = std::max(max_gate, g);
      }
    }
    if (w.merge == DauMerge::kSum) {
      for (std::size_t i = 0; i < m.data().size(); ++i) {
        const double in = m.data()[i];
        const double o = r.output.data()[i];
        sign_kept = sign_kept && (in == 0.0 ? o == 0.0 : (in > 0.0) == (o > 0.0));
      }
    }
  }
  const FeatureMap zero(w.channels, a.height, a.width);
  const FeatureMap z = dau_forward(zero, w);
  const bool zero_ok = std::ranges::all_of(z.data(), [](double v) { return v == 0.0; });
  json checks = {
      {"gates_in_open_unit_interval", {{"min", min_gate}, {"max", max_gate}, {"pass", gates_open}}},
      {"zero_input_zero_output", {{"pass", zero_ok}}},
  };
  if (w.merge == DauMerge::kSum) checks["sign_preserved"] = {{"pass", sign_kept}};
  return report_checks(checks, out);
}

void add_demo_options(CLI::App* sub, DemoArgs& a) {
  sub->add_option("--channels", a.channels, "feature channels (multiple of 8)");
  sub->add_option("--height", a.height)->check(CLI::PositiveNumber);
  sub->add_option("--width", a.width)->check(CLI::PositiveNumber);
  sub->add_option("--seed", a.seed);
  sub->add_option("--runs", a.runs)->check(CLI::PositiveNumber);
  sub->add_option("--weights", a.weights, "JSON weight container")->check(CLI::ExistingFile);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"srbench: super-resolution evaluation and inference utilities"};
  app.require_subcommand(1);
  std::function<int()> action;

  EvalArgs eval;
  auto* s_eval = app.add_subcommand("eval", "evaluate an SR directory against HR references");
  s_eval->add_option("--config", eval.config, "evaluation config (JSON)")->required();
  s_eval->callback([&] { action = [&] { return cmd_eval(eval, out, err); }; });

  LeaderboardArgs lb;
  auto* s_lb = app.add_subcommand("leaderboard", "score and rank team results");
  s_lb->add_option("--input", lb.input, "CSV track,team,psnr,ssim[,score]")->required();
  s_lb->add_option("--track", lb.track)->check(CLI::IsMember({"x2", "x3", "x4"}));
  s_lb->add_option("--format", lb.format)->check(CLI::IsMember({"text", "json", "csv"}));
  s_lb->add_option("--output", lb.output);
  s_lb->add_option("--score-mode", lb.score_mode)->check(CLI::IsMember({"mean", "sum"}));
  s_lb->callback([&] { action = [&] { return cmd_leaderboard(lb, out, err); }; });

  EnsembleArgs ens;
  auto* s_ens = app.add_subcommand("ensemble", "self-ensemble an external model over D4");
  s_ens->add_option("--model-cmd", ens.model_cmd, "command run as <cmd> in.png out.png")->required();
  s_ens->add_option("--scale", ens.scale)->required()->check(CLI::IsMember({2, 3, 4}));
  s_ens->add_option("--in", ens.in)->required();
  s_ens->add_option("--out", ens.out)->required();
  s_ens->add_option("--transforms", ens.transforms)->check(CLI::IsMember({8, 4, 1}));
  s_ens->add_option("--jobs", ens.jobs)->check(CLI::PositiveNumber);
  s_ens->callback([&] { action = [&] { return cmd_ensemble(ens, out, err); }; });

  FuseArgs fuse;
  auto* s_fuse = app.add_subcommand("fuse", "average outputs of several models");
  s_fuse->add_option("--inputs", fuse.inputs, "comma-separated directories")
      ->required()
      ->delimiter(',');
  s_fuse->add_option("--out", fuse.out)->required();
  s_fuse->callback([&] { action = [&] { return cmd_fuse(fuse, out, err); }; });

  TileArgs tile;
  auto* s_tile = app.add_subcommand("tile-apply", "run an external model over overlapping tiles");
  s_tile->add_option("--model-cmd", tile.model_cmd)->required();
  s_tile->add_option("--window", tile.window)->check(CLI::PositiveNumber);
  s_tile->add_option("--core", tile.core)->check(CLI::PositiveNumber);
  s_tile->add_option("--scale", tile.scale)->check(CLI::IsMember({1, 2, 3, 4}));
  s_tile->add_option("--in", tile.in)->required();
  s_tile->add_option("--out", tile.out)->required();
  s_tile->add_option("--jobs", tile.jobs)->check(CLI::PositiveNumber);
  s_tile->callback([&] { action = [&] { return cmd_tile_apply(tile, out, err); }; });

  AugmentArgs aug;
  auto* s_aug = app.add_subcommand("augment", "apply a paired augmentation pipeline");
  s_aug->add_option("--spec", aug.spec, "augmentation spec (JSON)")->required();
  s_aug->add_option("--in-lr", aug.in_lr)->required();
  s_aug->add_option("--in-hr", aug.in_hr)->required();
  s_aug->add_option("--out", aug.out)->required();
  s_aug->callback([&] { action = [&] { return cmd_augment(aug, out, err); }; });

  WaveletArgs wav;
  auto* s_wav = app.add_subcommand("wavelet-loss", "Haar wavelet loss of an image pair");
  s_wav->add_option("x", wav.x, "reconstructed image")->required();
  s_wav->add_option("y", wav.y, "reference image")->required();
  s_wav->add_option("--stages", wav.stages)->check(CLI::Range(1, 16));
  s_wav->add_option("--lambda", wav.lambda);
  s_wav->add_option("--pixel-scale", wav.pixel_scale, "1 or 255")->check(CLI::PositiveNumber);
  s_wav->callback([&] { action = [&] { return cmd_wavelet_loss(wav, out, err); }; });

  LossProbeArgs probe;
  auto* s_probe = app.add_subcommand("loss-probe", "break down composite losses for a pair");
  s_probe->add_option("x", probe.x)->required();
  s_probe->add_option("y", probe.y)->required();
  s_probe->add_option("--preset", probe.preset)
      ->check(CLI::IsMember({"oppo", "inception_v1", "inception_v2", "inception_v3", "custom"}));
  s_probe->add_option("--alpha", probe.alpha);
  s_probe->add_option("--beta", probe.beta);
  s_probe->add_option("--gamma", probe.gamma);
  s_probe->add_option("--vgg", probe.vgg, "externally computed VGG term");
  s_probe->add_option("--pixel-scale", probe.pixel_scale, "scale applied to L1 only")->check(CLI::PositiveNumber);
  s_probe->callback([&] { action = [&] { return cmd_loss_probe(probe, out, err); }; });

  DemoArgs skff;
  auto* s_skff = app.add_subcommand("skff-demo", "seeded SKFF forwards with invariant checks");
  add_demo_options(s_skff, skff);
  s_skff->callback([&] { action = [&] { return cmd_skff_demo(skff, out, err); }; });

  DemoArgs dau;
  auto* s_dau = app.add_subcommand("dau-demo", "seeded DAU forwards with invariant checks");
  add_demo_options(s_dau, dau);
  s_dau->callback([&] { action = [&] { return cmd_dau_demo(dau, out, err); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    return action();
  } catch (const Error& e) {
    err << "srbench: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "srbench: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace srbench::cli
