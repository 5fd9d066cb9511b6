#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ppanav/bridge/loop.hpp"

namespace ppanav::runner {

/// Column order of the trajectory CSV.
inline constexpr const char* kCsvHeader =
    "step,x,y,heading,mode,theta_steer,closest_x,closest_y,closest_dis,direction,"
    "collision,clearance,target_index";

void write_csv(std::ostream& out, const std::vector<bridge::TickRecord>& ticks);
std::string to_csv(const std::vector<bridge::TickRecord>& ticks);

/// Parses a CSV produced by write_csv. Throws std::invalid_argument on a
/// malformed document.
std::vector<bridge::TickRecord> parse_csv(const std::string& text);

struct RunSummary {
  std::uint64_t steps = 0;
  std::size_t targets_total = 0;
  std::size_t reached_targets = 0;
  std::uint64_t collision_ticks = 0;
  std::uint64_t collision_events = 0;  // rising edges of the collision flag
  double min_clearance = 0.0;
  std::string final_mode;
  std::string stop_reason;
};

/// Everything except targets_total and stop_reason comes from the log.
RunSummary summarize(const std::vector<bridge::TickRecord>& ticks, std::size_t targets_total,
                     bridge::StopReason stop);

std::string summary_json(const RunSummary& s);

}  // namespace ppanav::runner
