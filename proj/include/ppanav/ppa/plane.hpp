#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ppanav::ppa {

inline constexpr int kPlaneSize = 256;
inline constexpr int kWordsPerRow = kPlaneSize / 64;
inline constexpr std::size_t kPlaneWords = kPlaneSize * kWordsPerRow;
inline constexpr std::size_t kPlanePixels = kPlaneSize * kPlaneSize;

using PlaneWords = std::span<const std::uint64_t, kPlaneWords>;
using MutablePlaneWords = std::span<std::uint64_t, kPlaneWords>;
using GrayPixels = std::span<const std::uint8_t, kPlanePixels>;

/// Pixel address on the 256x256 array. `x` is the row (0 = image top),
/// `y` the column.
struct PixelCoord {
  int x = 0;
  int y = 0;

  friend bool operator==(const PixelCoord&, const PixelCoord&) = default;
};

bool in_range(PixelCoord c) noexcept;

/// 8-bit grayscale register plane, row-major.
class GrayPlane {
 public:
  GrayPlane();
  explicit GrayPlane(std::uint8_t fill);
  /// Takes exactly kPlanePixels bytes; throws std::invalid_argument otherwise.
  explicit GrayPlane(std::vector<std::uint8_t> pixels);

  std::uint8_t at(int x, int y) const { return pixels_[index(x, y)]; }
  void set(int x, int y, std::uint8_t v) { pixels_[index(x, y)] = v; }

  GrayPixels pixels() const { return GrayPixels(pixels_.data(), kPlanePixels); }
  std::span<std::uint8_t, kPlanePixels> pixels() {
    return std::span<std::uint8_t, kPlanePixels>(pixels_.data(), kPlanePixels);
  }

  friend bool operator==(const GrayPlane&, const GrayPlane&) = default;

 private:
  static std::size_t index(int x, int y) {
    return static_cast<std::size_t>(x) * kPlaneSize + static_cast<std::size_t>(y);
  }
  std::vector<std::uint8_t> pixels_;
};

/// 1-bit register plane. Row x is stored as four 64-bit words; column y
/// lives in word y/64 at bit y%64.
class BitPlane {
 public:
  BitPlane() { words_.fill(0); }

  static BitPlane ones();

  bool get(int x, int y) const {
    return (words_[word_index(x, y)] >> (y & 63)) & 1u;
  }
  void set(int x, int y, bool v = true) {
    const std::uint64_t bit = std::uint64_t{1} << (y & 63);
    auto& w = words_[word_index(x, y)];
    w = v ? (w | bit) : (w & ~bit);
  }

  PlaneWords words() const { return PlaneWords(words_); }
  MutablePlaneWords words() { return MutablePlaneWords(words_); }

  std::span<const std::uint64_t, kWordsPerRow> row(int x) const {
    return std::span<const std::uint64_t, kWordsPerRow>(
        words_.data() + static_cast<std::size_t>(x) * kWordsPerRow, kWordsPerRow);
  }

  std::size_t popcount() const;

  friend bool operator==(const BitPlane&, const BitPlane&) = default;

 private:
  static std::size_t word_index(int x, int y) {
    return static_cast<std::size_t>(x) * kWordsPerRow + static_cast<std::size_t>(y >> 6);
  }
  alignas(32) std::array<std::uint64_t, kPlaneWords> words_;
};

/// Tight axis-aligned bounds of a set of pixels (inclusive).
struct BoundingBox {
  int x_min = 0;
  int x_max = 0;
  int y_min = 0;
  int y_max = 0;

  /// Bottom row, middle column (floor of the column midpoint).
  PixelCoord bottom_center() const { return {x_max, (y_min + y_max) / 2}; }
  int height() const { return x_max - x_min + 1; }
  int width() const { return y_max - y_min + 1; }

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

}  // namespace ppanav::ppa
