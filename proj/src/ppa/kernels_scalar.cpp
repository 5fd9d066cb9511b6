#include "ppanav/ppa/kernels.hpp"
#include "row_ops.hpp"

namespace ppanav::ppa {
namespace {

using detail::Row;
using detail::operator&;
using detail::operator|;

void threshold(GrayPixels gray, std::uint8_t t, Polarity polarity, MutablePlaneWords out) {
  const std::uint64_t flip = polarity == Polarity::kBelow ? ~std::uint64_t{0} : 0;
  for (std::size_t w = 0; w < kPlaneWords; ++w) {
    const std::uint8_t* px = gray.data() + w * 64;
    std::uint64_t bits = 0;
    for (int b = 0; b < 64; ++b) {
      bits |= static_cast<std::uint64_t>(px[b] >= t) << b;
    }
    out[w] = bits ^ flip;
  }
}

void bit_and(PlaneWords a, PlaneWords b, MutablePlaneWords out) {
  for (std::size_t i = 0; i < kPlaneWords; ++i) out[i] = a[i] & b[i];
}

void bit_or(PlaneWords a, PlaneWords b, MutablePlaneWords out) {
  for (std::size_t i = 0; i < kPlaneWords; ++i) out[i] = a[i] | b[i];
}

void bit_xor(PlaneWords a, PlaneWords b, MutablePlaneWords out) {
  for (std::size_t i = 0; i < kPlaneWords; ++i) out[i] = a[i] ^ b[i];
}

void bit_not(PlaneWords a, MutablePlaneWords out) {
  for (std::size_t i = 0; i < kPlaneWords; ++i) out[i] = ~a[i];
}

bool any(PlaneWords a) {
  std::uint64_t acc = 0;
  for (auto w : a) acc |= w;
  return acc != 0;
}

Row horizontal_and(const Row& r) { return r & detail::shift_up(r, 1) & detail::shift_down(r, 1); }
Row horizontal_or(const Row& r) { return r | detail::shift_up(r, 1) | detail::shift_down(r, 1); }

void erode3x3(PlaneWords in, MutablePlaneWords out) {
  Row prev{};
  Row cur = horizontal_and(detail::load_row(in, 0));
  for (int x = 0; x < kPlaneSize; ++x) {
    const Row next = x + 1 < kPlaneSize ? horizontal_and(detail::load_row(in, x + 1)) : Row{};
    detail::store_row(out, x, prev & cur & next);
    prev = cur;
    cur = next;
  }
}

void dilate3x3(PlaneWords in, MutablePlaneWords out) {
  Row prev{};
  Row cur = horizontal_or(detail::load_row(in, 0));
  for (int x = 0; x < kPlaneSize; ++x) {
    const Row next = x + 1 < kPlaneSize ? horizontal_or(detail::load_row(in, x + 1)) : Row{};
    detail::store_row(out, x, prev | cur | next);
    prev = cur;
    cur = next;
  }
}

// Alternating top-down / bottom-up sweeps; each row takes what its vertical
// neighbours already hold, then fills along its own mask runs.
void flood(PlaneWords seed, PlaneWords mask, MutablePlaneWords out) {
  bit_and(seed, mask, out);
  const auto relax = [&](int x) {
    const Row m = detail::load_row(mask, x);
    Row r = detail::load_row(out, x);
    if (x > 0) r = r | detail::load_row(out, x - 1);
    if (x + 1 < kPlaneSize) r = r | detail::load_row(out, x + 1);
    r = detail::fill_runs(r & m, m);
    const Row old = detail::load_row(out, x);
    if (r == old) return false;
    detail::store_row(out, x, r);
    return true;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (int x = 0; x < kPlaneSize; ++x) changed |= relax(x);
    for (int x = kPlaneSize - 1; x >= 0; --x) changed |= relax(x);
  }
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{
      .name = "scalar",
      .threshold = threshold,
      .bit_and = bit_and,
      .bit_or = bit_or,
      .bit_xor = bit_xor,
      .bit_not = bit_not,
      .any = any,
      .erode3x3 = erode3x3,
      .dilate3x3 = dilate3x3,
      .flood = flood,
  };
  return table;
}

}  // namespace ppanav::ppa
