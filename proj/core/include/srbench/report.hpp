#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "srbench/metrics.hpp"

namespace srbench {

inline constexpr int kReportSchemaVersion = 1;

struct ImageMetrics {
  std::string id;  // file stem shared by the SR/HR pair
  double psnr = 0.0;  // kPsnrInfinity for identical images
  double ssim = 0.0;
  std::optional<double> ms_ssim;  // absent when the pair is too small
};

// How +inf PSNR entries (identical SR/HR) enter psnr_avg.
enum class NonFinitePolicy {
  kPropagate,  // psnr_avg becomes +inf; the aggregate is flagged
  kExclude,    // average over finite entries only
};

struct MetricReport {
  std::vector<ImageMetrics> per_image;  // sorted by id
  double psnr_avg = 0.0;
  double ssim_avg = 0.0;
  std::optional<double> ms_ssim_avg;  // only when every image has ms_ssim
  double score = 0.0;
  ScoreMode score_mode = ScoreMode::kMean;
  NonFinitePolicy policy = NonFinitePolicy::kPropagate;
  int nonfinite_psnr_count = 0;

  // True when psnr_avg or score is not finite.
  bool nonfinite_aggregate() const;
};

// Fills the aggregate fields of `report` from report.per_image using the
// report's policy and score mode.
void aggregate(MetricReport& report);

// Fixed-precision rounding applied to every printed value.
double round_psnr(double v);    // 0.001 dB
double round_unit(double v);    // 0.0001

// JSON document (schema "srbench.metric_report", version 1). Non-finite
// numbers are written as null.
std::string to_json(const MetricReport& report, const std::string& track = {});

// CSV: "# srbench.metric_report v1" line, header
// id,psnr,ssim,ms_ssim,score, one row per image and a final "AVERAGE" row.
// Non-finite values print as "inf"; absent ones as an empty field.
std::string to_csv(const MetricReport& report);

void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace srbench
