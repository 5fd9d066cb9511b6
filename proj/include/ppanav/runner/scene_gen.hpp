#pragma once

#include <cstdint>
#include <string_view>

#include "ppanav/world/scene.hpp"

namespace ppanav::runner {

enum class SceneKind { kEllipses, kCorridor, kScatter };

SceneKind parse_scene_kind(std::string_view text);

/// Two concentric cone rings with the vehicle in the track between them.
struct EllipseLayout {
  double outer_a = 7.0;
  double outer_b = 6.0;
  double inner_a = 3.0;
  double inner_b = 2.0;
  double spacing = 0.6;       // arc length between neighbouring cones
  double jitter = 0.03;       // relative radial scatter: centres satisfy (x/a)^2+(y/b)^2 in [(1-j)^2,(1+j)^2]
  double cone_radius = 0.15;
  double cone_height = 0.5;
};

struct ScatterLayout {
  int cone_count = 12;
  double half_extent = 8.0;
  double min_spacing = 1.5;   // between cone centres
  double keep_out = 1.5;      // around the start pose and every target
  int target_count = 3;
  double cone_radius = 0.2;
  double cone_height = 0.5;
};

world::WorldScene make_ellipses(std::uint64_t seed, const EllipseLayout& layout = {});
world::WorldScene make_corridor(std::uint64_t seed);
world::WorldScene make_scatter(std::uint64_t seed, const ScatterLayout& layout = {});

/// Deterministic in (kind, seed).
world::WorldScene gen_scene(SceneKind kind, std::uint64_t seed);

}  // namespace ppanav::runner
