#include "ppanav/runner/scene_gen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace ppanav::runner {
namespace {

// Parameter values that split the ellipse into `count` equal arcs, starting
// at parameter `phase`.
std::vector<double> equal_arc_parameters(double a, double b, int count, double phase) {
  constexpr int kSamples = 4096;
  std::vector<double> cumulative(kSamples + 1, 0.0);
  const double dt = 2.0 * std::numbers::pi / kSamples;
  for (int i = 1; i <= kSamples; ++i) {
    const double t = phase + (i - 0.5) * dt;
    cumulative[i] = cumulative[i - 1] + std::hypot(a * std::sin(t), b * std::cos(t)) * dt;
  }
  const double perimeter = cumulative.back();
  std::vector<double> out;
  out.reserve(count);
  int j = 0;
  for (int k = 0; k < count; ++k) {
    const double s = perimeter * k / count;
    while (j < kSamples && cumulative[j + 1] < s) ++j;
    const double span = cumulative[j + 1] - cumulative[j];
    const double frac = span > 0.0 ? (s - cumulative[j]) / span : 0.0;
    out.push_back(phase + (j + frac) * dt);
  }
  return out;
}

double ellipse_perimeter(double a, double b) {
  // Ramanujan's second approximation.
  const double h = (a - b) * (a - b) / ((a + b) * (a + b));
  return std::numbers::pi * (a + b) * (1.0 + 3.0 * h / (10.0 + std::sqrt(4.0 - 3.0 * h)));
}

void add_ring(world::WorldScene& scene, std::mt19937_64& rng, double a, double b,
              const EllipseLayout& layout) {
  const int count = std::max(3, static_cast<int>(std::floor(ellipse_perimeter(a, b) / layout.spacing)));
  std::uniform_real_distribution<double> phase_dist(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> scale_dist(1.0 - layout.jitter, 1.0 + layout.jitter);
  for (double t : equal_arc_parameters(a, b, count, phase_dist(rng))) {
    const double s = scale_dist(rng);
    scene.cones.push_back({s * a * std::cos(t), s * b * std::sin(t), layout.cone_radius, layout.cone_height});
  }
}

}  // namespace

SceneKind parse_scene_kind(std::string_view text) {
  if (text == "ellipses") return SceneKind::kEllipses;
  if (text == "corridor") return SceneKind::kCorridor;
  if (text == "scatter") return SceneKind::kScatter;
  throw std::invalid_argument("unknown scene kind '" + std::string(text) + "'");
}

world::WorldScene make_ellipses(std::uint64_t seed, const EllipseLayout& layout) {
  if (!(layout.inner_a < layout.outer_a && layout.inner_b < layout.outer_b)) {
    throw std::invalid_argument("inner ellipse must lie inside the outer one");
  }
  std::mt19937_64 rng(seed);
  world::WorldScene scene;
  add_ring(scene, rng, layout.outer_a, layout.outer_b, layout);
  add_ring(scene, rng, layout.inner_a, layout.inner_b, layout);
  // Start midway across the track on the +x side, heading counter-clockwise.
  scene.vehicle.x = 0.5 * (layout.outer_a + layout.inner_a);
  scene.vehicle.y = 0.0;
  scene.vehicle.heading = std::numbers::pi / 2.0;
  const double margin = 2.0;
  scene.arena = {-layout.outer_a - margin, -layout.outer_b - margin, layout.outer_a + margin,
                 layout.outer_b + margin};
  return scene;
}

world::WorldScene make_corridor(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> wobble(-0.05, 0.05);
  world::WorldScene scene;
  for (double x = 1.0; x <= 11.0 + 1e-9; x += 0.6) {
    scene.cones.push_back({x, 1.6 + wobble(rng), 0.15, 0.5});
    scene.cones.push_back({x, -1.6 + wobble(rng), 0.15, 0.5});
  }
  scene.targets.push_back({10.0, 0.0});
  scene.arena = {-2.0, -4.0, 14.0, 4.0};
  return scene;
}

world::WorldScene make_scatter(std::uint64_t seed, const ScatterLayout& layout) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-layout.half_extent, layout.half_extent);
  world::WorldScene scene;
  scene.arena = {-layout.half_extent - 2.0, -layout.half_extent - 2.0, layout.half_extent + 2.0,
                 layout.half_extent + 2.0};

  for (int i = 0; i < layout.target_count; ++i) {
    while (true) {
      const world::Point2 t{coord(rng), coord(rng)};
      if (std::hypot(t.x, t.y) < 3.0) continue;
      bool ok = true;
      for (const auto& other : scene.targets) ok = ok && std::hypot(t.x - other.x, t.y - other.y) >= 3.0;
      if (!ok) continue;
      scene.targets.push_back(t);
      break;
    }
  }

  constexpr int kMaxAttempts = 100000;
  int attempts = 0;
  while (static_cast<int>(scene.cones.size()) < layout.cone_count) {
    if (++attempts > kMaxAttempts) {
      throw std::invalid_argument("scatter layout too dense for " + std::to_string(layout.cone_count) + " cones");
    }
    const double x = coord(rng);
    const double y = coord(rng);
    bool ok = std::hypot(x, y) >= layout.keep_out;
    for (const auto& t : scene.targets) ok = ok && std::hypot(x - t.x, y - t.y) >= layout.keep_out;
    for (const auto& c : scene.cones) ok = ok && std::hypot(x - c.cx, y - c.cy) >= layout.min_spacing;
    if (ok) scene.cones.push_back({x, y, layout.cone_radius, layout.cone_height});
  }
  return scene;
}

world::WorldScene gen_scene(SceneKind kind, std::uint64_t seed) {
  switch (kind) {
    case SceneKind::kEllipses: return make_ellipses(seed);
    case SceneKind::kCorridor: return make_corridor(seed);
    case SceneKind::kScatter: return make_scatter(seed);
  }
  throw std::invalid_argument("unknown scene kind");
}

}  // namespace ppanav::runner
