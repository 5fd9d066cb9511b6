// Scalar vs AVX2 equivalence. Every kernel must produce bit-identical
// planes on both backends. Skipped where AVX2 is unavailable.

#include <gtest/gtest.h>

#include <random>

#include "ppanav/ppa/kernels.hpp"
#include "support/oracles.hpp"

namespace {

using namespace ppanav::ppa;

class KernelEquivalence : public ::testing::Test {
 protected:
  void SetUp() override {
    simd_ = avx2_kernels();
    if (!simd_) GTEST_SKIP() << "AVX2 backend not available";
  }

  // Mix of sparse, dense, full-size and edge-heavy planes.
  BitPlane plane(int i) {
    switch (i % 4) {
      case 0: return oracle::random_plane(rng_, 256, 0.5);
      case 1: return oracle::random_plane(rng_, 256, 0.05);
      case 2: return oracle::random_plane(rng_, 256, 0.95);
      default: {
        BitPlane b = oracle::random_plane(rng_, 256, 0.3);
        for (int k = 0; k < 256; ++k) {
          b.set(0, k);
          b.set(255, k);
          b.set(k, 63);
          b.set(k, 64);
          b.set(k, 255);
        }
        return b;
      }
    }
  }

  const KernelTable& scalar_ = scalar_kernels();
  const KernelTable* simd_ = nullptr;
  std::mt19937_64 rng_{42};
};

TEST_F(KernelEquivalence, Binary) {
  for (int i = 0; i < 20; ++i) {
    const BitPlane a = plane(i), b = plane(i + 1);
    for (auto pick : {&KernelTable::bit_and, &KernelTable::bit_or, &KernelTable::bit_xor}) {
      BitPlane s, v;
      (scalar_.*pick)(a.words(), b.words(), s.words());
      (simd_->*pick)(a.words(), b.words(), v.words());
      ASSERT_EQ(s, v);
    }
    BitPlane s, v;
    scalar_.bit_not(a.words(), s.words());
    simd_->bit_not(a.words(), v.words());
    ASSERT_EQ(s, v);
  }
}

TEST_F(KernelEquivalence, Any) {
  BitPlane empty;
  EXPECT_FALSE(simd_->any(empty.words()));
  for (int x : {0, 128, 255}) {
    for (int y : {0, 63, 64, 200, 255}) {
      BitPlane b;
      b.set(x, y);
      EXPECT_TRUE(simd_->any(b.words())) << x << "," << y;
      EXPECT_TRUE(scalar_.any(b.words()));
    }
  }
}

TEST_F(KernelEquivalence, Threshold) {
  std::uniform_int_distribution<int> byte(0, 255);
  for (int i = 0; i < 10; ++i) {
    GrayPlane g;
    for (auto& p : g.pixels()) p = static_cast<std::uint8_t>(byte(rng_));
    for (int t : {0, 1, 100, 128, 255}) {
      for (Polarity pol : {Polarity::kAbove, Polarity::kBelow}) {
        BitPlane s, v;
        scalar_.threshold(g.pixels(), static_cast<std::uint8_t>(t), pol, s.words());
        simd_->threshold(g.pixels(), static_cast<std::uint8_t>(t), pol, v.words());
        ASSERT_EQ(s, v) << "t=" << t;
      }
    }
  }
}

TEST_F(KernelEquivalence, Morphology) {
  for (int i = 0; i < 20; ++i) {
    const BitPlane a = plane(i);
    BitPlane s, v;
    scalar_.erode3x3(a.words(), s.words());
    simd_->erode3x3(a.words(), v.words());
    ASSERT_EQ(s, v);
    scalar_.dilate3x3(a.words(), s.words());
    simd_->dilate3x3(a.words(), v.words());
    ASSERT_EQ(s, v);
  }
}

TEST_F(KernelEquivalence, Flood) {
  for (int i = 0; i < 20; ++i) {
    const BitPlane mask = oracle::random_plane(rng_, 256, 0.55 + 0.02 * (i % 5));
    const BitPlane seed = oracle::random_plane(rng_, 256, 0.0005);
    BitPlane s, v;
    scalar_.flood(seed.words(), mask.words(), s.words());
    simd_->flood(seed.words(), mask.words(), v.words());
    ASSERT_EQ(s, v);
  }
}

TEST(KernelDispatch, ActiveTableIsOneOfTheBackends) {
  const KernelTable& t = active_kernels();
  EXPECT_TRUE(&t == &scalar_kernels() || &t == avx2_kernels());
  EXPECT_EQ(scalar_kernels().name, "scalar");
}

// Each backend against the per-pixel oracles, so a shared bug in both
// cannot hide behind the equivalence checks.
class KernelOracle : public ::testing::TestWithParam<const KernelTable*> {};

TEST_P(KernelOracle, MatchesPixelOracles) {
  const KernelTable& k = *GetParam();
  std::mt19937_64 rng(7);
  for (int i = 0; i < 6; ++i) {
    const BitPlane a = oracle::random_plane(rng, 256, 0.6);
    const auto grid = oracle::to_grid(a);
    BitPlane out;
    k.erode3x3(a.words(), out.words());
    ASSERT_EQ(out, oracle::to_plane(oracle::erode(grid)));
    k.dilate3x3(a.words(), out.words());
    ASSERT_EQ(out, oracle::to_plane(oracle::dilate(grid)));
    const BitPlane seed = oracle::random_plane(rng, 256, 0.001);
    k.flood(seed.words(), a.words(), out.words());
    ASSERT_EQ(out, oracle::to_plane(oracle::bfs_flood(oracle::to_grid(seed), grid)));
  }
}

std::vector<const KernelTable*> backends() {
  std::vector<const KernelTable*> v{&scalar_kernels()};
  if (avx2_kernels()) v.push_back(avx2_kernels());
  return v;
}

INSTANTIATE_TEST_SUITE_P(Backends, KernelOracle, ::testing::ValuesIn(backends()),
                         [](const auto& info) { return std::string(info.param->name); });

}  // namespace
