#include "ppanav/runner/config.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ppanav/bridge/loop.hpp"

namespace ppanav::runner {

std::string_view to_string(RunMode m) {
  switch (m) {
    case RunMode::kReactive: return "reactive";
    case RunMode::kSingleTarget: return "single_target";
    case RunMode::kMultiTarget: return "multi_target";
  }
  return "unknown";
}

RunMode parse_mode(std::string_view text) {
  std::string s(text);
  for (auto& c : s) c = c == '-' ? '_' : c;
  if (s == "reactive") return RunMode::kReactive;
  if (s == "single_target" || s == "single") return RunMode::kSingleTarget;
  if (s == "multi_target" || s == "multi") return RunMode::kMultiTarget;
  throw std::invalid_argument("unknown run mode '" + std::string(text) + "'");
}

void RunConfig::validate() const {
  if (max_steps == 0) throw std::invalid_argument("max_steps must be positive");
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  params.validate();
  vision.areas.validate();
}

void apply_override(RunConfig& config, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw std::invalid_argument("parameter override must look like key=value: " + std::string(assignment));
  }
  const std::string key(assignment.substr(0, eq));
  const std::string text(assignment.substr(eq + 1));

  if (key == "speed_unit") {
    if (text == "rev" || text == "revolutions") {
      config.speed_unit = world::SpeedUnit::kRevolutionsPerSecond;
    } else if (text == "rad" || text == "radians") {
      config.speed_unit = world::SpeedUnit::kRadiansPerSecond;
    } else {
      throw std::invalid_argument("speed_unit must be rev or rad");
    }
    return;
  }

  double value = 0.0;
  std::size_t used = 0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty() || !std::isfinite(value)) {
    throw std::invalid_argument("parameter " + key + " needs a finite number, got '" + text + "'");
  }

  if (key == "dt") {
    config.dt = value;
  } else if (key == "polarity") {
    config.vision.polarity = value > 0.5 ? ppa::Polarity::kBelow : ppa::Polarity::kAbove;
  } else if (bridge::apply_nav_param(config.params, key, value)) {
  } else if (bridge::apply_vision_param(config.vision, key, static_cast<float>(value))) {
  } else {
    throw std::invalid_argument("unknown parameter '" + key + "'");
  }
}

}  // namespace ppanav::runner
