#include "srbench/evaluation.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "srbench/error.hpp"
#include "srbench/parallel.hpp"
#include "srbench/png_io.hpp"

namespace srbench {

namespace fs = std::filesystem;

namespace {

bool is_png(const fs::path& p) {
  std::string ext = p.extension().string();
  std::ranges::transform(ext, ext.begin(),
                         [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".png";
}

std::map<std::string, fs::path> png_files_by_stem(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw Error(ErrorKind::kFileNotFound, "not a directory: " + dir.string());
  }
  std::map<std::string, fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file() || !is_png(entry.path())) continue;
    const std::string stem = entry.path().stem().string();
    if (!files.emplace(stem, entry.path()).second) {
      throw Error(ErrorKind::kUnmatchedFiles,
                  "duplicate stem '" + stem + "' in " + dir.string());
    }
  }
  return files;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += ", ";
    out += s;
  }
  return out;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kFileNotFound, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::vector<ImagePairPaths> pair_directory_images(const fs::path& sr_dir,
                                                  const fs::path& hr_dir) {
  const auto sr = png_files_by_stem(sr_dir);
  const auto hr = png_files_by_stem(hr_dir);
  std::vector<std::string> missing_sr;
  std::vector<std::string> missing_hr;
  for (const auto& [stem, path] : hr) {
    if (!sr.contains(stem)) missing_sr.push_back(stem);
  }
  for (const auto& [stem, path] : sr) {
    if (!hr.contains(stem)) missing_hr.push_back(stem);
  }
  if (!missing_sr.empty() || !missing_hr.empty()) {
    std::string msg = "unmatched images";
    if (!missing_sr.empty()) msg += "; no SR file for: " + join(missing_sr);
    if (!missing_hr.empty()) msg += "; no HR file for: " + join(missing_hr);
    throw Error(ErrorKind::kUnmatchedFiles, msg);
  }
  if (hr.empty()) {
    throw Error(ErrorKind::kUnmatchedFiles, "no PNG images in " + hr_dir.string());
  }
  std::vector<ImagePairPaths> pairs;
  for (const auto& [stem, path] : hr) pairs.push_back({stem, sr.at(stem), path});
  return pairs;
}

ImageMetrics evaluate_pair(const std::string& id, const Image& sr, const Image& hr,
                           const SsimConfig& cfg) {
  ImageMetrics m;
  m.id = id;
  m.psnr = psnr_rgb(sr, hr);
  m.ssim = ssim(sr, hr, cfg);
  if (std::min(sr.height(), sr.width()) >= ms_ssim_min_size(cfg)) {
    m.ms_ssim = ms_ssim(sr, hr, cfg);
  }
  return m;
}

MetricReport evaluate_dirs(const fs::path& sr_dir, const fs::path& hr_dir,
                           const EvalOptions& options) {
  options.ssim.validate();
  const auto pairs = pair_directory_images(sr_dir, hr_dir);
  MetricReport report;
  report.score_mode = options.score_mode;
  report.policy = options.policy;
  report.per_image.resize(pairs.size());
  parallel_for(pairs.size(), options.jobs, [&](std::size_t i) {
    const auto& p = pairs[i];
    const Image sr = load_png(p.sr);
    const Image hr = load_png(p.hr);
    if (!sr.same_dims(hr)) {
      throw Error(ErrorKind::kDimensionMismatch,
                  "pair '" + p.id + "': SR " + p.sr.string() + " is " +
                      std::to_string(sr.height()) + "x" + std::to_string(sr.width()) +
                      ", HR " + p.hr.string() + " is " + std::to_string(hr.height()) +
                      "x" + std::to_string(hr.width()));
    }
    report.per_image[i] = evaluate_pair(p.id, sr, hr, options.ssim);
  });
  aggregate(report);
  return report;
}

EvalConfig parse_eval_config(const std::string& json_text, const fs::path& base_dir) {
  using nlohmann::json;
  auto resolve = [&](const std::string& p) {
    const fs::path path(p);
    return path.is_absolute() ? path : base_dir / path;
  };
  EvalConfig cfg;
  try {
    const json j = json::parse(json_text);
    if (!j.is_object()) throw Error(ErrorKind::kConfig, "eval config must be a JSON object");
    const int version = j.value("schema_version", 1);
    if (version != 1) {
      throw Error(ErrorKind::kConfig,
                  "unsupported eval config schema_version " + std::to_string(version));
    }
    cfg.sr_dir = resolve(j.at("sr_dir").get<std::string>());
    cfg.hr_dir = resolve(j.at("hr_dir").get<std::string>());
    cfg.track = parse_track(j.value("track", std::string("x2")));
    if (j.contains("team")) cfg.team = j.at("team").get<std::string>();
    if (j.contains("output")) {
      const json& out = j.at("output");
      if (out.contains("json")) cfg.json_out = resolve(out.at("json").get<std::string>());
      if (out.contains("csv")) cfg.csv_out = resolve(out.at("csv").get<std::string>());
    }
    const std::string mode = j.value("score_mode", std::string("mean"));
    if (mode == "mean") {
      cfg.options.score_mode = ScoreMode::kMean;
    } else if (mode == "sum") {
      cfg.options.score_mode = ScoreMode::kSum;
    } else {
      throw Error(ErrorKind::kConfig, "score_mode must be \"mean\" or \"sum\"");
    }
    const std::string policy = j.value("nonfinite", std::string("propagate"));
    if (policy == "propagate") {
      cfg.options.policy = NonFinitePolicy::kPropagate;
    } else if (policy == "exclude") {
      cfg.options.policy = NonFinitePolicy::kExclude;
    } else {
      throw Error(ErrorKind::kConfig, "nonfinite must be \"propagate\" or \"exclude\"");
    }
    cfg.options.jobs = j.value("jobs", 1);
    if (j.contains("ssim")) {
      const json& s = j.at("ssim");
      SsimConfig& sc = cfg.options.ssim;
      sc.window_size = s.value("window", sc.window_size);
      sc.sigma = s.value("sigma", sc.sigma);
      sc.k1 = s.value("k1", sc.k1);
      sc.k2 = s.value("k2", sc.k2);
      if (s.contains("ms_weights")) sc.ms_weights = s.at("ms_weights").get<std::vector<double>>();
    }
    cfg.options.ssim.validate();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kConfig, std::string("malformed eval config: ") + e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kConfig) throw;
    throw Error(ErrorKind::kConfig, e.what());
  }
  return cfg;
}

EvalConfig load_eval_config(const fs::path& path) {
  return parse_eval_config(read_file(path), path.parent_path());
}

EvalOutcome run_eval(const EvalConfig& config) {
  EvalOutcome outcome;
  outcome.report = evaluate_dirs(config.sr_dir, config.hr_dir, config.options);
  if (config.team) {
    const TeamResult r{*config.team, outcome.report.psnr_avg, outcome.report.ssim_avg,
                       std::nullopt};
    outcome.entry = build_leaderboard(std::span(&r, 1), config.track,
                                      config.options.score_mode)
                        .front();
  }
  if (config.json_out) {
    write_text_file(*config.json_out, to_json(outcome.report, to_string(config.track)));
  }
  if (config.csv_out) write_text_file(*config.csv_out, to_csv(outcome.report));
  return outcome;
}

EvalOutcome run_eval(const fs::path& config_path) {
  return run_eval(load_eval_config(config_path));
}

}  // namespace srbench
