#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vg/episode.hpp"
#include "vg/metrics.hpp"

namespace vg {

inline constexpr std::string_view kReportSchema = "vgreport/1";
inline constexpr std::string_view kLogSchema = "vglog/1";

nlohmann::json metrics_to_json(const MetricsReport& m);

/// Summary of one episode; with_steps adds the per-step log and trajectory.
nlohmann::json result_to_json(const EpisodeResult& r, bool with_steps = false);

struct ReportHeader {
  std::string map;
  std::string scenario;
  std::string scheme;
  std::string plan;
  std::string policy;
  std::uint64_t seed = 0;
};

/// Deterministic: no timestamps or host details, fixed key order.
nlohmann::json make_report(const ReportHeader& h, const MetricsReport& m, const std::vector<EpisodeResult>& results);

/// Fixed-width plain-text metrics table.
std::string format_table(const ReportHeader& h, const MetricsReport& m);

/// One trajectory log record per line (JSON lines).
struct EpisodeLog {
  std::string map;
  std::string start;
  std::string goal;
  std::string outcome;
  Polyline plan;
  std::vector<Vec2> waypoints;
  std::vector<Vec2> trajectory;
};

EpisodeLog make_log(const std::string& map_name, const EpisodeResult& r);
nlohmann::json log_to_json(const EpisodeLog& log);
void write_logs(std::ostream& out, const std::string& map_name, const std::vector<EpisodeResult>& results);
/// Skips blank lines; throws ParseError with the line number otherwise.
std::vector<EpisodeLog> parse_logs(std::istream& in);

}  // namespace vg
