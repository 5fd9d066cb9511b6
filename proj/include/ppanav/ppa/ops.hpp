#pragma once

// Register-plane operations used by the closest-obstacle detector. All are
// pure: they take planes by const reference and return new planes.

#include <optional>
#include <stdexcept>

#include "ppanav/ppa/kernels.hpp"
#include "ppanav/ppa/plane.hpp"

namespace ppanav::ppa {

class EmptyPlaneError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Binary segmentation. kAbove keeps g >= t, kBelow keeps g < t.
BitPlane threshold(const GrayPlane& g, std::uint8_t t, Polarity polarity);

/// Speckle removal: 3x3 opening (erode then dilate). Pixels outside the
/// array count as background.
BitPlane filter_noise(const BitPlane& b);

BitPlane erode(const BitPlane& b);
BitPlane dilate(const BitPlane& b);

/// True iff any bit is set.
bool global_or(const BitPlane& b);

/// First set bit in row-major order from (0,0).
std::optional<PixelCoord> scan_first_event(const BitPlane& b);

/// Single-bit plane. Throws std::out_of_range for coordinates off the array.
BitPlane load_point(PixelCoord c);

/// Union of the 4-connected components of `mask` touched by `seed`.
/// Seed bits on background contribute nothing.
BitPlane flood(const BitPlane& seed, const BitPlane& mask);

/// Throws EmptyPlaneError when no bit is set.
BoundingBox scan_bounding_box(const BitPlane& b);

BitPlane exclusive_or(const BitPlane& a, const BitPlane& b);
BitPlane conjunction(const BitPlane& a, const BitPlane& b);
BitPlane invert(const BitPlane& a);

}  // namespace ppanav::ppa
