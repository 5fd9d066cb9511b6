#pragma once

// Portable 256-bit row arithmetic shared by the scalar kernels.

#include <array>
#include <cstdint>

#include "ppanav/ppa/plane.hpp"

namespace ppanav::ppa::detail {

using Row = std::array<std::uint64_t, kWordsPerRow>;

inline Row load_row(PlaneWords p, int x) {
  const auto base = static_cast<std::size_t>(x) * kWordsPerRow;
  return {p[base], p[base + 1], p[base + 2], p[base + 3]};
}

inline void store_row(MutablePlaneWords p, int x, const Row& r) {
  const auto base = static_cast<std::size_t>(x) * kWordsPerRow;
  for (int i = 0; i < kWordsPerRow; ++i) p[base + i] = r[i];
}

// Moves column y to column y+k; columns shifted in are 0.
inline Row shift_up(const Row& r, int k) {
  Row out{};
  const int q = k >> 6;
  const int s = k & 63;
  for (int i = kWordsPerRow - 1; i >= q; --i) {
    std::uint64_t w = r[i - q] << s;
    if (s != 0 && i - q - 1 >= 0) w |= r[i - q - 1] >> (64 - s);
    out[i] = w;
  }
  return out;
}

// Moves column y to column y-k.
inline Row shift_down(const Row& r, int k) {
  Row out{};
  const int q = k >> 6;
  const int s = k & 63;
  for (int i = 0; i + q < kWordsPerRow; ++i) {
    std::uint64_t w = r[i + q] >> s;
    if (s != 0 && i + q + 1 < kWordsPerRow) w |= r[i + q + 1] << (64 - s);
    out[i] = w;
  }
  return out;
}

inline Row operator&(const Row& a, const Row& b) {
  return {a[0] & b[0], a[1] & b[1], a[2] & b[2], a[3] & b[3]};
}
inline Row operator|(const Row& a, const Row& b) {
  return {a[0] | b[0], a[1] | b[1], a[2] | b[2], a[3] | b[3]};
}

// Occluded (Kogge-Stone) fill: extends every set bit of `gen` along the runs
// of `mask` that contain it, in both directions. Requires gen within mask.
inline Row fill_runs(Row gen, const Row& mask) {
  Row pro = mask;
  Row up = gen;
  for (int k = 1; k < kPlaneSize; k <<= 1) {
    up = up | (pro & shift_up(up, k));
    pro = pro & shift_up(pro, k);
  }
  pro = mask;
  Row down = up;
  for (int k = 1; k < kPlaneSize; k <<= 1) {
    down = down | (pro & shift_down(down, k));
    pro = pro & shift_down(pro, k);
  }
  return down;
}

}  // namespace ppanav::ppa::detail
