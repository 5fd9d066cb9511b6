#include "ppanav/runner/trajectory.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ppanav::runner {
namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

nav::Mode parse_mode_name(const std::string& s) {
  for (auto m : {nav::Mode::kTargetNav, nav::Mode::kAvoidance, nav::Mode::kOnTarget, nav::Mode::kIdle,
                 nav::Mode::kCruise}) {
    if (nav::to_string(m) == s) return m;
  }
  throw std::invalid_argument("unknown mode '" + s + "' in trajectory log");
}

double parse_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) throw std::invalid_argument("bad number '" + s + "'");
  return v;
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<bridge::TickRecord>& ticks) {
  out << kCsvHeader << '\n';
  for (const auto& t : ticks) {
    out << t.step << ',' << num(t.pose.x) << ',' << num(t.pose.y) << ',' << num(t.pose.heading) << ','
        << nav::to_string(t.mode) << ',' << num(t.theta_steer) << ',' << num(t.report.closest_x) << ','
        << num(t.report.closest_y) << ',' << num(t.report.closest_dis) << ',' << t.report.direction << ','
        << (t.collision ? 1 : 0) << ',' << num(t.clearance) << ',' << t.target_index << '\n';
  }
}

std::string to_csv(const std::vector<bridge::TickRecord>& ticks) {
  std::ostringstream out;
  write_csv(out, ticks);
  return out.str();
}

std::vector<bridge::TickRecord> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw std::invalid_argument("trajectory log has an unexpected header");
  }
  std::vector<bridge::TickRecord> ticks;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) f.push_back(cell);
    if (f.size() != 13) throw std::invalid_argument("trajectory row needs 13 fields");
    bridge::TickRecord t;
    t.step = static_cast<std::uint64_t>(parse_double(f[0]));
    t.pose = {parse_double(f[1]), parse_double(f[2]), parse_double(f[3])};
    t.mode = parse_mode_name(f[4]);
    t.theta_steer = parse_double(f[5]);
    t.report.closest_x = parse_double(f[6]);
    t.report.closest_y = parse_double(f[7]);
    t.report.closest_dis = parse_double(f[8]);
    t.report.direction = static_cast<int>(parse_double(f[9]));
    t.collision = f[10] == "1";
    t.clearance = parse_double(f[11]);
    t.target_index = static_cast<std::size_t>(parse_double(f[12]));
    ticks.push_back(t);
  }
  return ticks;
}

RunSummary summarize(const std::vector<bridge::TickRecord>& ticks, std::size_t targets_total,
                     bridge::StopReason stop) {
  RunSummary s;
  s.steps = ticks.size();
  s.targets_total = targets_total;
  s.min_clearance = std::numeric_limits<double>::infinity();
  bool previous = false;
  for (const auto& t : ticks) {
    s.reached_targets = std::max(s.reached_targets, t.target_index);
    if (t.collision) {
      ++s.collision_ticks;
      if (!previous) ++s.collision_events;
    }
    previous = t.collision;
    s.min_clearance = std::min(s.min_clearance, t.clearance);
  }
  s.final_mode = ticks.empty() ? "none" : std::string(nav::to_string(ticks.back().mode));
  s.stop_reason = std::string(bridge::to_string(stop));
  return s;
}

std::string summary_json(const RunSummary& s) {
  nlohmann::json doc{{"steps", s.steps},
                     {"targets_total", s.targets_total},
                     {"reached_targets", s.reached_targets},
                     {"all_targets_reached", s.targets_total > 0 && s.reached_targets >= s.targets_total},
                     {"collision_ticks", s.collision_ticks},
                     {"collisions", s.collision_events},
                     {"final_mode", s.final_mode},
                     {"stop_reason", s.stop_reason}};
  if (std::isfinite(s.min_clearance)) {
    doc["min_clearance"] = s.min_clearance;
  } else {
    doc["min_clearance"] = nullptr;
  }
  return doc.dump(2) + "\n";
}

}  // namespace ppanav::runner
