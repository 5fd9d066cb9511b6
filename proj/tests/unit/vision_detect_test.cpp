#include <gtest/gtest.h>

#include <random>

#include "ppanav/ppa/ops.hpp"
#include "ppanav/vision/detect.hpp"
#include "support/oracles.hpp"

namespace {

using namespace ppanav;
using ppa::BitPlane;
using vision::AreaConfig;

BitPlane rect(int x0, int x1, int y0, int y1) {
  BitPlane b;
  for (int x = x0; x <= x1; ++x)
    for (int y = y0; y <= y1; ++y) b.set(x, y);
  return b;
}

TEST(ClassifyDirection, BandEdges) {
  const AreaConfig a;
  EXPECT_EQ(vision::classify_direction(127, a), -1);
  EXPECT_EQ(vision::classify_direction(128, a), 1);
  EXPECT_EQ(vision::classify_direction(15, a), -1);
  EXPECT_EQ(vision::classify_direction(240, a), 1);
  EXPECT_EQ(vision::classify_direction(14, a), 0);
  EXPECT_EQ(vision::classify_direction(241, a), 0);
}

TEST(AreaConfig, ValidateRejectsDisorder) {
  EXPECT_NO_THROW(AreaConfig{}.validate());
  AreaConfig a;
  a.distant_x_max = 240;
  EXPECT_THROW(a.validate(), std::invalid_argument);
  a = {};
  a.right_y_max = 130;
  EXPECT_THROW(a.validate(), std::invalid_argument);
  a = {};
  a.safe_left_min = 300;
  EXPECT_THROW(a.validate(), std::invalid_argument);
}

TEST(ValidArea, StrictBounds) {
  const AreaConfig a;
  EXPECT_FALSE(vision::in_valid_area({50, 100}, a));
  EXPECT_TRUE(vision::in_valid_area({51, 100}, a));
  EXPECT_TRUE(vision::in_valid_area({239, 100}, a));
  EXPECT_FALSE(vision::in_valid_area({240, 100}, a));
  EXPECT_FALSE(vision::in_valid_area({100, 10}, a));
  EXPECT_TRUE(vision::in_valid_area({100, 11}, a));
  EXPECT_FALSE(vision::in_valid_area({100, 245}, a));
}

TEST(ClosestObstacle, EmptyPlaneGivesSentinel) {
  int seen = -1;
  const auto r = vision::closest_obstacle(BitPlane{}, AreaConfig{}, &seen);
  EXPECT_EQ(r.closest_dis, vision::kNoObstacleDistance);
  EXPECT_EQ(r.direction, 0);
  EXPECT_EQ(seen, 0);
}

TEST(ClosestObstacle, OnlyGatedBlobsGiveSentinel) {
  BitPlane b = rect(10, 40, 100, 110);             // distant
  b = ppa::exclusive_or(b, rect(241, 250, 100, 110));  // forbidden
  b = ppa::exclusive_or(b, rect(100, 120, 0, 8));      // right safe band
  int seen = 0;
  const auto r = vision::closest_obstacle(b, AreaConfig{}, &seen);
  EXPECT_EQ(seen, 3);
  EXPECT_EQ(r, vision::ObstacleReport{});
}

TEST(ClosestObstacle, BlobAtRobotPixelHasZeroDistance) {
  AreaConfig open;
  open.forbidden_x_min = 256;  // let the bottom row through
  const auto r = vision::closest_obstacle(rect(250, 255, 120, 134), open);
  EXPECT_EQ(r.closest_x, 255);
  EXPECT_EQ(r.closest_y, 127);
  EXPECT_EQ(r.closest_dis, 0.0);
  EXPECT_EQ(r.direction, -1);
}

TEST(ClosestObstacle, NearerBoxWinsAndSetsDirection) {
  BitPlane b = rect(60, 100, 30, 40);                 // bottom (100, 35)
  b = ppa::exclusive_or(b, rect(150, 200, 170, 190));  // bottom (200, 180)
  const auto r = vision::closest_obstacle(b, AreaConfig{});
  EXPECT_EQ(r.closest_x, 200);
  EXPECT_EQ(r.closest_y, 180);
  EXPECT_NEAR(r.closest_dis, std::hypot(55.0, 53.0), 1e-12);
  EXPECT_EQ(r.direction, 1);
}

TEST(ClosestObstacle, TieKeepsFirstDiscovered) {
  // Mirror images about column 127: bottoms (200,100) and (200,154) are
  // equally far from (255,127). The upper blob is discovered first.
  BitPlane b = rect(150, 200, 95, 105);
  b = ppa::exclusive_or(b, rect(180, 200, 149, 159));
  const auto r = vision::closest_obstacle(b, AreaConfig{});
  EXPECT_EQ(r.closest_y, 100);
  EXPECT_EQ(r.direction, -1);
}

TEST(ClosestObstacle, BetweenBandColumnsGiveZeroDirection) {
  const auto r = vision::closest_obstacle(rect(100, 150, 11, 13), AreaConfig{});
  EXPECT_EQ(r.closest_y, 12);
  EXPECT_EQ(r.direction, 0);
  EXPECT_LT(r.closest_dis, vision::kNoObstacleDistance);
}

TEST(ClosestObstacle, DiagonalTouchIsTwoComponents) {
  BitPlane b = rect(100, 110, 100, 110);
  b = ppa::exclusive_or(b, rect(111, 130, 111, 120));
  int seen = 0;
  vision::closest_obstacle(b, AreaConfig{}, &seen);
  EXPECT_EQ(seen, 2);
}

TEST(DetectClosest, DarkConeOnLightGround) {
  ppa::GrayPlane g(200);
  for (int x = 120; x <= 180; ++x)
    for (int y = 60; y <= 80; ++y) g.set(x, y, 30);
  const auto r = vision::detect_closest(g, vision::DetectorConfig{});
  EXPECT_EQ(r.closest_x, 180);
  EXPECT_EQ(r.closest_y, 70);
  EXPECT_EQ(r.direction, -1);
}

TEST(DetectClosest, SpeckleIsFilteredOut) {
  ppa::GrayPlane g(200);
  g.set(150, 150, 0);
  g.set(151, 151, 0);
  const auto r = vision::detect_closest(g, vision::DetectorConfig{});
  EXPECT_EQ(r, vision::ObstacleReport{});
}

TEST(DetectClosest, MatchesComponentsOracle) {
  std::mt19937_64 rng(99);
  const vision::DetectorConfig cfg;
  for (int i = 0; i < 15; ++i) {
    const ppa::GrayPlane frame = oracle::random_blob_frame(rng, 4 + i % 8);
    const auto expected = oracle::closest(
        oracle::dilate(oracle::erode(oracle::threshold(frame, cfg.threshold, true))), cfg.areas);
    const auto got = vision::detect_closest(frame, cfg);
    EXPECT_EQ(got.closest_x, expected.closest_x);
    EXPECT_EQ(got.closest_y, expected.closest_y);
    EXPECT_NEAR(got.closest_dis, expected.closest_dis, 1e-6);
    EXPECT_EQ(got.direction, expected.direction);
  }
}

TEST(DetectClosest, GatingSoundness) {
  std::mt19937_64 rng(123);
  const AreaConfig a;
  for (int i = 0; i < 20; ++i) {
    const auto r = vision::detect_closest(oracle::random_blob_frame(rng, 10), vision::DetectorConfig{});
    if (r.closest_dis == vision::kNoObstacleDistance) continue;
    EXPECT_TRUE(vision::in_valid_area({int(r.closest_x), int(r.closest_y)}, a));
    if (r.direction == -1) {
      EXPECT_GE(r.closest_y, 15);
      EXPECT_LE(r.closest_y, 127);
    }
    if (r.direction == 1) {
      EXPECT_GE(r.closest_y, 128);
      EXPECT_LE(r.closest_y, 240);
    }
  }
}

}  // namespace
