#pragma once

// Whole-plane kernels behind the register-plane operations. Each backend
// (portable scalar, AVX2) fills a KernelTable; the table in use is picked
// once at startup from the CPU's capabilities and can be pinned to the
// scalar path with PPANAV_KERNELS=scalar.

#include <cstdint>
#include <string_view>

#include "ppanav/ppa/plane.hpp"

namespace ppanav::ppa {

enum class Polarity : std::uint8_t { kAbove, kBelow };

struct KernelTable {
  std::string_view name;

  // above: bit = gray >= t; below: bit = gray < t.
  void (*threshold)(GrayPixels gray, std::uint8_t t, Polarity polarity, MutablePlaneWords out);

  void (*bit_and)(PlaneWords a, PlaneWords b, MutablePlaneWords out);
  void (*bit_or)(PlaneWords a, PlaneWords b, MutablePlaneWords out);
  void (*bit_xor)(PlaneWords a, PlaneWords b, MutablePlaneWords out);
  void (*bit_not)(PlaneWords a, MutablePlaneWords out);
  bool (*any)(PlaneWords a);

  // 3x3 square structuring element; pixels outside the array read as 0.
  void (*erode3x3)(PlaneWords in, MutablePlaneWords out);
  void (*dilate3x3)(PlaneWords in, MutablePlaneWords out);

  // 4-connected propagation of (seed & mask) through mask, to a fixed point.
  void (*flood)(PlaneWords seed, PlaneWords mask, MutablePlaneWords out);
};

const KernelTable& scalar_kernels();

/// nullptr when the binary was built without AVX2 support or the running
/// CPU lacks it.
const KernelTable* avx2_kernels();

/// The table all ppa operations route through.
const KernelTable& active_kernels();

}  // namespace ppanav::ppa
