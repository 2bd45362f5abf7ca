#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "srbench/metrics.hpp"

namespace srbench {

enum class Track { kX2, kX3, kX4 };

Track parse_track(std::string_view name);  // "x2", "x3", "x4"
const char* to_string(Track track);
int track_scale(Track track);

struct TeamResult {
  std::string team;
  double psnr_avg = 0.0;
  double ssim_avg = 0.0;
  std::optional<double> published_score;  // carried through for comparison
};

struct LeaderboardEntry {
  std::string team;
  Track track = Track::kX2;
  double psnr_avg = 0.0;
  double ssim_avg = 0.0;
  double score = 0.0;
  int rank = 0;  // 1-based
  std::optional<double> published_score;
};

// Scores every result and orders by score descending, then PSNR
// descending, then team name ascending. Ranks are consecutive positions in
// that order. The output does not depend on the input order.
// Throws kInvalidArgument on an empty list or a duplicate team name.
std::vector<LeaderboardEntry> build_leaderboard(std::span<const TeamResult> results,
                                                Track track,
                                                ScoreMode mode = ScoreMode::kMean);

struct TrackResults {
  Track track;
  std::vector<TeamResult> results;  // in file order
};

// CSV with header `track,team,psnr,ssim[,score]`; '#' lines and blank lines
// are skipped. Rows are grouped by track in first-appearance order.
std::vector<TrackResults> parse_results_csv(std::string_view text);

std::string leaderboard_to_text(std::span<const LeaderboardEntry> board);
std::string leaderboard_to_csv(std::span<const LeaderboardEntry> board);
std::string leaderboard_to_json(std::span<const LeaderboardEntry> board);

}  // namespace srbench
