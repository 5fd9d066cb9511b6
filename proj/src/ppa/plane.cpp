#include "ppanav/ppa/plane.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace ppanav::ppa {

bool in_range(PixelCoord c) noexcept {
  return c.x >= 0 && c.x < kPlaneSize && c.y >= 0 && c.y < kPlaneSize;
}

GrayPlane::GrayPlane() : pixels_(kPlanePixels, 0) {}

GrayPlane::GrayPlane(std::uint8_t fill) : pixels_(kPlanePixels, fill) {}

GrayPlane::GrayPlane(std::vector<std::uint8_t> pixels) : pixels_(std::move(pixels)) {
  if (pixels_.size() != kPlanePixels) {
    throw std::invalid_argument("gray plane needs " + std::to_string(kPlanePixels) +
                                " pixels, got " + std::to_string(pixels_.size()));
  }
}

BitPlane BitPlane::ones() {
  BitPlane p;
  p.words_.fill(~std::uint64_t{0});
  return p;
}

std::size_t BitPlane::popcount() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

}  // namespace ppanav::ppa
