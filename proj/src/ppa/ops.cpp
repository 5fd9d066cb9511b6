#include "ppanav/ppa/ops.hpp"

#include <bit>
#include <string>

namespace ppanav::ppa {

BitPlane threshold(const GrayPlane& g, std::uint8_t t, Polarity polarity) {
  BitPlane out;
  active_kernels().threshold(g.pixels(), t, polarity, out.words());
  return out;
}

BitPlane erode(const BitPlane& b) {
  BitPlane out;
  active_kernels().erode3x3(b.words(), out.words());
  return out;
}

BitPlane dilate(const BitPlane& b) {
  BitPlane out;
  active_kernels().dilate3x3(b.words(), out.words());
  return out;
}

BitPlane filter_noise(const BitPlane& b) { return dilate(erode(b)); }

bool global_or(const BitPlane& b) { return active_kernels().any(b.words()); }

std::optional<PixelCoord> scan_first_event(const BitPlane& b) {
  const auto words = b.words();
  for (std::size_t i = 0; i < kPlaneWords; ++i) {
    if (words[i] != 0) {
      const int x = static_cast<int>(i / kWordsPerRow);
      const int y = static_cast<int>(i % kWordsPerRow) * 64 + std::countr_zero(words[i]);
      return PixelCoord{x, y};
    }
  }
  return std::nullopt;
}

BitPlane load_point(PixelCoord c) {
  if (!in_range(c)) {
    throw std::out_of_range("load_point: (" + std::to_string(c.x) + "," + std::to_string(c.y) +
                            ") is off the 256x256 array");
  }
  BitPlane out;
  out.set(c.x, c.y);
  return out;
}

BitPlane flood(const BitPlane& seed, const BitPlane& mask) {
  BitPlane out;
  active_kernels().flood(seed.words(), mask.words(), out.words());
  return out;
}

BoundingBox scan_bounding_box(const BitPlane& b) {
  int x_min = kPlaneSize;
  int x_max = -1;
  std::uint64_t columns[kWordsPerRow] = {};
  for (int x = 0; x < kPlaneSize; ++x) {
    const auto row = b.row(x);
    std::uint64_t acc = 0;
    for (int i = 0; i < kWordsPerRow; ++i) {
      columns[i] |= row[i];
      acc |= row[i];
    }
    if (acc != 0) {
      if (x_min == kPlaneSize) x_min = x;
      x_max = x;
    }
  }
  if (x_max < 0) throw EmptyPlaneError("scan_bounding_box: plane has no set bits");

  int y_min = -1;
  int y_max = -1;
  for (int i = 0; i < kWordsPerRow; ++i) {
    if (columns[i] != 0) {
      y_min = i * 64 + std::countr_zero(columns[i]);
      break;
    }
  }
  for (int i = kWordsPerRow - 1; i >= 0; --i) {
    if (columns[i] != 0) {
      y_max = i * 64 + 63 - std::countl_zero(columns[i]);
      break;
    }
  }
  return {x_min, x_max, y_min, y_max};
}

BitPlane exclusive_or(const BitPlane& a, const BitPlane& b) {
  BitPlane out;
  active_kernels().bit_xor(a.words(), b.words(), out.words());
  return out;
}

BitPlane conjunction(const BitPlane& a, const BitPlane& b) {
  BitPlane out;
  active_kernels().bit_and(a.words(), b.words(), out.words());
  return out;
}

BitPlane invert(const BitPlane& a) {
  BitPlane out;
  active_kernels().bit_not(a.words(), out.words());
  return out;
}

}  // namespace ppanav::ppa
