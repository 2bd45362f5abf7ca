#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "srbench/leaderboard.hpp"
#include "srbench/metrics.hpp"
#include "srbench/report.hpp"

namespace srbench {

struct EvalOptions {
  SsimConfig ssim;
  ScoreMode score_mode = ScoreMode::kMean;
  NonFinitePolicy policy = NonFinitePolicy::kPropagate;
  int jobs = 1;
};

struct ImagePairPaths {
  std::string id;
  std::filesystem::path sr;
  std::filesystem::path hr;
};

// Pairs the .png files (extension matched case-insensitively) of two
// directories by identical stem, sorted by stem. Other files are not
// considered. Any stem present on one side only is kUnmatchedFiles with the
// stems listed; a directory that cannot be read is kFileNotFound.
std::vector<ImagePairPaths> pair_directory_images(const std::filesystem::path& sr_dir,
                                                  const std::filesystem::path& hr_dir);

// PSNR, SSIM and (when the pair is large enough) MS-SSIM for every pair,
// then aggregates. Images may be processed concurrently; results are
// assembled in stem order. A size mismatch names the offending pair.
MetricReport evaluate_dirs(const std::filesystem::path& sr_dir,
                           const std::filesystem::path& hr_dir,
                           const EvalOptions& options = {});

ImageMetrics evaluate_pair(const std::string& id, const Image& sr, const Image& hr,
                           const SsimConfig& cfg);

// Declarative evaluation run (JSON, documented in the README). Relative
// paths are resolved against the config file's directory.
struct EvalConfig {
  std::filesystem::path sr_dir;
  std::filesystem::path hr_dir;
  Track track = Track::kX2;
  std::optional<std::string> team;
  std::optional<std::filesystem::path> json_out;
  std::optional<std::filesystem::path> csv_out;
  EvalOptions options;
};

EvalConfig parse_eval_config(const std::string& json_text,
                             const std::filesystem::path& base_dir);
EvalConfig load_eval_config(const std::filesystem::path& path);

struct EvalOutcome {
  MetricReport report;
  std::optional<LeaderboardEntry> entry;  // when the config names a team
};

// Evaluates, then writes the configured JSON/CSV reports. Nothing is
// written if evaluation fails. A non-finite aggregate is reported, not
// thrown; callers decide how loud to be (the CLI exits non-zero).
EvalOutcome run_eval(const EvalConfig& config);
EvalOutcome run_eval(const std::filesystem::path& config_path);

}  // namespace srbench
