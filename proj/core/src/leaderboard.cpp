#include "srbench/leaderboard.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include <json.hpp>

#include "srbench/error.hpp"
#include "srbench/report.hpp"

namespace srbench {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

double parse_number(const std::string& field, int line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(field, &used);
    if (used != field.size()) throw std::invalid_argument(field);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorKind::kConfig, "line " + std::to_string(line_no) +
                                        ": not a number: '" + field + "'");
  }
}

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

}  // namespace

Track parse_track(std::string_view name) {
  if (name == "x2") return Track::kX2;
  if (name == "x3") return Track::kX3;
  if (name == "x4") return Track::kX4;
  throw Error(ErrorKind::kInvalidArgument,
              "unknown track '" + std::string(name) + "' (expected x2, x3 or x4)");
}

const char* to_string(Track track) {
  switch (track) {
    case Track::kX2: return "x2";
    case Track::kX3: return "x3";
    case Track::kX4: return "x4";
  }
  return "x2";
}

int track_scale(Track track) {
  switch (track) {
    case Track::kX2: return 2;
    case Track::kX3: return 3;
    case Track::kX4: return 4;
  }
  return 2;
}

std::vector<LeaderboardEntry> build_leaderboard(std::span<const TeamResult> results,
                                                Track track, ScoreMode mode) {
  if (results.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "leaderboard needs at least one entry");
  }
  std::set<std::string> seen;
  std::vector<LeaderboardEntry> board;
  board.reserve(results.size());
  for (const TeamResult& r : results) {
    if (!seen.insert(r.team).second) {
      throw Error(ErrorKind::kInvalidArgument,
                  "duplicate team '" + r.team + "' in track " + to_string(track));
    }
    board.push_back({r.team, track, r.psnr_avg, r.ssim_avg,
                     challenge_score(r.psnr_avg, r.ssim_avg, mode), 0,
                     r.published_score});
  }
  std::ranges::sort(board, [](const LeaderboardEntry& a, const LeaderboardEntry& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.psnr_avg != b.psnr_avg) return a.psnr_avg > b.psnr_avg;
    return a.team < b.team;
  });
  for (std::size_t i = 0; i < board.size(); ++i) board[i].rank = static_cast<int>(i) + 1;
  return board;
}

std::vector<TrackResults> parse_results_csv(std::string_view text) {
  std::vector<TrackResults> tracks;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  bool has_score = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto fields = split_csv_line(t);
    if (!header_seen) {
      header_seen = true;
      if (fields.size() < 4 || fields[0] != "track" || fields[1] != "team" ||
          fields[2] != "psnr" || fields[3] != "ssim" ||
          (fields.size() == 5 && fields[4] != "score") || fields.size() > 5) {
        throw Error(ErrorKind::kConfig,
                    "results CSV header must be track,team,psnr,ssim[,score]");
      }
      has_score = fields.size() == 5;
      continue;
    }
    if (fields.size() != (has_score ? 5u : 4u)) {
      throw Error(ErrorKind::kConfig,
                  "line " + std::to_string(line_no) + ": wrong field count");
    }
    Track track;
    try {
      track = parse_track(fields[0]);
    } catch (const Error& e) {
      throw Error(ErrorKind::kConfig, "line " + std::to_string(line_no) + ": " + e.what());
    }
    TeamResult r{fields[1], parse_number(fields[2], line_no),
                 parse_number(fields[3], line_no), std::nullopt};
    if (has_score && !fields[4].empty()) r.published_score = parse_number(fields[4], line_no);
    auto it = std::ranges::find_if(tracks, [&](const TrackResults& tr) { return tr.track == track; });
    if (it == tracks.end()) {
      tracks.push_back({track, {}});
      it = std::prev(tracks.end());
    }
    it->results.push_back(std::move(r));
  }
  if (!header_seen) throw Error(ErrorKind::kConfig, "results CSV is empty");
  return tracks;
}

std::string leaderboard_to_text(std::span<const LeaderboardEntry> board) {
  std::ostringstream out;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%-5s %-22s %9s %7s %7s %9s\n", "rank", "team",
                "psnr", "ssim", "score", "published");
  out << buf;
  for (const auto& e : board) {
    const std::string published =
        e.published_score ? fixed(*e.published_score, 4) : std::string("-");
    std::snprintf(buf, sizeof(buf), "%-5d %-22s %9.3f %7.4f %7.4f %9s\n", e.rank,
                  e.team.c_str(), e.psnr_avg, e.ssim_avg, round_unit(e.score),
                  published.c_str());
    out << buf;
  }
  return out.str();
}

std::string leaderboard_to_csv(std::span<const LeaderboardEntry> board) {
  std::ostringstream out;
  out << "# srbench.leaderboard v" << kReportSchemaVersion << "\n";
  out << "rank,track,team,psnr,ssim,score,published_score\n";
  for (const auto& e : board) {
    out << e.rank << ',' << to_string(e.track) << ',' << e.team << ','
        << fixed(e.psnr_avg, 3) << ',' << fixed(e.ssim_avg, 4) << ','
        << fixed(e.score, 4) << ','
        << (e.published_score ? fixed(*e.published_score, 4) : "") << '\n';
  }
  return out.str();
}

std::string leaderboard_to_json(std::span<const LeaderboardEntry> board) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& e : board) {
    nlohmann::json row = {{"rank", e.rank},
                          {"track", to_string(e.track)},
                          {"team", e.team},
                          {"psnr_avg", round_psnr(e.psnr_avg)},
                          {"ssim_avg", round_unit(e.ssim_avg)},
                          {"score", round_unit(e.score)}};
    row["published_score"] =
        e.published_score ? nlohmann::json(*e.published_score) : nlohmann::json(nullptr);
    rows.push_back(row);
  }
  const nlohmann::json doc = {{"schema", "srbench.leaderboard"},
                              {"schema_version", kReportSchemaVersion},
                              {"entries", rows}};
  return doc.dump(2) + "\n";
}

}  // namespace srbench
