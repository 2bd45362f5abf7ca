#include "srbench/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "srbench/error.hpp"

namespace srbench {

namespace {

nlohmann::json number_or_null(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

std::string format_fixed(double v, int decimals) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

const char* to_string(ScoreMode mode) {
  return mode == ScoreMode::kMean ? "mean" : "sum";
}

}  // namespace

bool MetricReport::nonfinite_aggregate() const {
  return !std::isfinite(psnr_avg) || !std::isfinite(score);
}

void aggregate(MetricReport& report) {
  const auto& rows = report.per_image;
  double psnr_sum = 0.0;
  double ssim_sum = 0.0;
  double ms_sum = 0.0;
  int psnr_n = 0;
  int ms_n = 0;
  report.nonfinite_psnr_count = 0;
  for (const auto& row : rows) {
    if (!std::isfinite(row.psnr)) {
      ++report.nonfinite_psnr_count;
      if (report.policy == NonFinitePolicy::kExclude) continue;
    }
    psnr_sum += row.psnr;
    ++psnr_n;
  }
  for (const auto& row : rows) {
    ssim_sum += row.ssim;
    if (row.ms_ssim) {
      ms_sum += *row.ms_ssim;
      ++ms_n;
    }
  }
  report.psnr_avg = psnr_n > 0 ? psnr_sum / psnr_n
                               : std::numeric_limits<double>::quiet_NaN();
  report.ssim_avg = rows.empty() ? std::numeric_limits<double>::quiet_NaN()
                                 : ssim_sum / static_cast<double>(rows.size());
  // A partial MS-SSIM mean would not be comparable across submissions.
  report.ms_ssim_avg = ms_n > 0 && static_cast<std::size_t>(ms_n) == rows.size()
                           ? std::optional<double>(ms_sum / ms_n)
                           : std::nullopt;
  report.score =
      challenge_score(report.psnr_avg, report.ssim_avg, report.score_mode);
}

double round_psnr(double v) {
  return std::isfinite(v) ? std::round(v * 1000.0) / 1000.0 : v;
}

double round_unit(double v) {
  return std::isfinite(v) ? std::round(v * 10000.0) / 10000.0 : v;
}

std::string to_json(const MetricReport& report, const std::string& track) {
  nlohmann::json images = nlohmann::json::array();
  for (const auto& row : report.per_image) {
    images.push_back({
        {"id", row.id},
        {"psnr", number_or_null(round_psnr(row.psnr))},
        {"psnr_finite", std::isfinite(row.psnr)},
        {"ssim", number_or_null(round_unit(row.ssim))},
        {"ms_ssim", row.ms_ssim ? number_or_null(round_unit(*row.ms_ssim))
                                : nlohmann::json(nullptr)},
    });
  }
  nlohmann::json doc = {
      {"schema", "srbench.metric_report"},
      {"schema_version", kReportSchemaVersion},
      {"score_mode", to_string(report.score_mode)},
      {"nonfinite_policy",
       report.policy == NonFinitePolicy::kExclude ? "exclude" : "propagate"},
      {"images", images},
      {"aggregate",
       {
           {"count", report.per_image.size()},
           {"psnr_avg", number_or_null(round_psnr(report.psnr_avg))},
           {"ssim_avg", number_or_null(round_unit(report.ssim_avg))},
           {"ms_ssim_avg", report.ms_ssim_avg
                               ? number_or_null(round_unit(*report.ms_ssim_avg))
                               : nlohmann::json(nullptr)},
           {"score", number_or_null(round_unit(report.score))},
           {"nonfinite_psnr_count", report.nonfinite_psnr_count},
           {"nonfinite_aggregate", report.nonfinite_aggregate()},
       }},
  };
  if (!track.empty()) doc["track"] = track;
  return doc.dump(2) + "\n";
}

std::string to_csv(const MetricReport& report) {
  std::ostringstream out;
  out << "# srbench.metric_report v" << kReportSchemaVersion << "\n";
  out << "id,psnr,ssim,ms_ssim,score\n";
  for (const auto& row : report.per_image) {
    out << row.id << ',' << format_fixed(row.psnr, 3) << ','
        << format_fixed(row.ssim, 4) << ','
        << (row.ms_ssim ? format_fixed(*row.ms_ssim, 4) : "") << ",\n";
  }
  out << "AVERAGE," << format_fixed(report.psnr_avg, 3) << ','
      << format_fixed(report.ssim_avg, 4) << ','
      << (report.ms_ssim_avg ? format_fixed(*report.ms_ssim_avg, 4) : "")
      << ',' << format_fixed(report.score, 4) << '\n';
  return out.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot open for writing: " + path.string());
  out << text;
  if (!out.flush()) throw Error(ErrorKind::kIo, "write failed: " + path.string());
}

}  // namespace srbench
