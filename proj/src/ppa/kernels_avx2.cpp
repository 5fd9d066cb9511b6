// AVX2 kernels: one 256-bit row of a BitPlane maps onto one __m256i.
// Compiled with -mavx2; only reached after a runtime CPU check.

#include <immintrin.h>

#include "ppanav/ppa/kernels.hpp"

namespace ppanav::ppa {
namespace {

inline __m256i load(PlaneWords p, int x) {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p.data() + x * kWordsPerRow));
}

inline void store(MutablePlaneWords p, int x, __m256i v) {
  _mm256_storeu_si256(reinterpret_cast<__m256i*>(p.data() + x * kWordsPerRow), v);
}

// Column y -> y+k across the full 256-bit row.
template <int K>
inline __m256i shift_up(__m256i v) {
  if constexpr (K == 128) {
    return _mm256_permute2x128_si256(v, v, 0x08);
  } else if constexpr (K == 64) {
    const __m256i lanes = _mm256_permute4x64_epi64(v, _MM_SHUFFLE(2, 1, 0, 3));
    return _mm256_blend_epi32(lanes, _mm256_setzero_si256(), 0x03);
  } else {
    const __m256i lanes = _mm256_permute4x64_epi64(v, _MM_SHUFFLE(2, 1, 0, 3));
    const __m256i carry = _mm256_blend_epi32(lanes, _mm256_setzero_si256(), 0x03);
    return _mm256_or_si256(_mm256_slli_epi64(v, K), _mm256_srli_epi64(carry, 64 - K));
  }
}

// Column y -> y-k.
template <int K>
inline __m256i shift_down(__m256i v) {
  if constexpr (K == 128) {
    return _mm256_permute2x128_si256(v, v, 0x81);
  } else if constexpr (K == 64) {
    const __m256i lanes = _mm256_permute4x64_epi64(v, _MM_SHUFFLE(0, 3, 2, 1));
    return _mm256_blend_epi32(lanes, _mm256_setzero_si256(), 0xC0);
  } else {
    const __m256i lanes = _mm256_permute4x64_epi64(v, _MM_SHUFFLE(0, 3, 2, 1));
    const __m256i carry = _mm256_blend_epi32(lanes, _mm256_setzero_si256(), 0xC0);
    return _mm256_or_si256(_mm256_srli_epi64(v, K), _mm256_slli_epi64(carry, 64 - K));
  }
}

template <int K>
inline void fill_step_up(__m256i& gen, __m256i& pro) {
  gen = _mm256_or_si256(gen, _mm256_and_si256(pro, shift_up<K>(gen)));
  pro = _mm256_and_si256(pro, shift_up<K>(pro));
}

template <int K>
inline void fill_step_down(__m256i& gen, __m256i& pro) {
  gen = _mm256_or_si256(gen, _mm256_and_si256(pro, shift_down<K>(gen)));
  pro = _mm256_and_si256(pro, shift_down<K>(pro));
}

inline __m256i fill_runs(__m256i gen, __m256i mask) {
  __m256i pro = mask;
  fill_step_up<1>(gen, pro);
  fill_step_up<2>(gen, pro);
  fill_step_up<4>(gen, pro);
  fill_step_up<8>(gen, pro);
  fill_step_up<16>(gen, pro);
  fill_step_up<32>(gen, pro);
  fill_step_up<64>(gen, pro);
  fill_step_up<128>(gen, pro);
  pro = mask;
  fill_step_down<1>(gen, pro);
  fill_step_down<2>(gen, pro);
  fill_step_down<4>(gen, pro);
  fill_step_down<8>(gen, pro);
  fill_step_down<16>(gen, pro);
  fill_step_down<32>(gen, pro);
  fill_step_down<64>(gen, pro);
  fill_step_down<128>(gen, pro);
  return gen;
}

inline bool equal(__m256i a, __m256i b) {
  const __m256i d = _mm256_xor_si256(a, b);
  return _mm256_testz_si256(d, d) != 0;
}

void threshold(GrayPixels gray, std::uint8_t t, Polarity polarity, MutablePlaneWords out) {
  const __m256i tv = _mm256_set1_epi8(static_cast<char>(t));
  const std::uint64_t flip = polarity == Polarity::kBelow ? ~std::uint64_t{0} : 0;
  for (std::size_t w = 0; w < kPlaneWords; ++w) {
    const auto* px = reinterpret_cast<const __m256i*>(gray.data() + w * 64);
    const __m256i lo = _mm256_loadu_si256(px);
    const __m256i hi = _mm256_loadu_si256(px + 1);
    // g >= t  <=>  max(g, t) == g, unsigned.
    const __m256i ge_lo = _mm256_cmpeq_epi8(_mm256_max_epu8(lo, tv), lo);
    const __m256i ge_hi = _mm256_cmpeq_epi8(_mm256_max_epu8(hi, tv), hi);
    const auto bits_lo = static_cast<std::uint32_t>(_mm256_movemask_epi8(ge_lo));
    const auto bits_hi = static_cast<std::uint32_t>(_mm256_movemask_epi8(ge_hi));
    out[w] = ((static_cast<std::uint64_t>(bits_hi) << 32) | bits_lo) ^ flip;
  }
}

template <typename Op>
inline void binary(PlaneWords a, PlaneWords b, MutablePlaneWords out, Op op) {
  for (int x = 0; x < kPlaneSize; ++x) store(out, x, op(load(a, x), load(b, x)));
}

void bit_and(PlaneWords a, PlaneWords b, MutablePlaneWords out) {
  binary(a, b, out, [](__m256i u, __m256i v) { return _mm256_and_si256(u, v); });
}

void bit_or(PlaneWords a, PlaneWords b, MutablePlaneWords out) {
  binary(a, b, out, [](__m256i u, __m256i v) { return _mm256_or_si256(u, v); });
}

void bit_xor(PlaneWords a, PlaneWords b, MutablePlaneWords out) {
  binary(a, b, out, [](__m256i u, __m256i v) { return _mm256_xor_si256(u, v); });
}

void bit_not(PlaneWords a, MutablePlaneWords out) {
  const __m256i ones = _mm256_set1_epi64x(-1);
  for (int x = 0; x < kPlaneSize; ++x) store(out, x, _mm256_xor_si256(load(a, x), ones));
}

bool any(PlaneWords a) {
  __m256i acc = _mm256_setzero_si256();
  for (int x = 0; x < kPlaneSize; ++x) acc = _mm256_or_si256(acc, load(a, x));
  return _mm256_testz_si256(acc, acc) == 0;
}

inline __m256i horizontal_and(__m256i r) {
  return _mm256_and_si256(r, _mm256_and_si256(shift_up<1>(r), shift_down<1>(r)));
}

inline __m256i horizontal_or(__m256i r) {
  return _mm256_or_si256(r, _mm256_or_si256(shift_up<1>(r), shift_down<1>(r)));
}

void erode3x3(PlaneWords in, MutablePlaneWords out) {
  __m256i prev = _mm256_setzero_si256();
  __m256i cur = horizontal_and(load(in, 0));
  for (int x = 0; x < kPlaneSize; ++x) {
    const __m256i next =
        x + 1 < kPlaneSize ? horizontal_and(load(in, x + 1)) : _mm256_setzero_si256();
    store(out, x, _mm256_and_si256(prev, _mm256_and_si256(cur, next)));
    prev = cur;
    cur = next;
  }
}

void dilate3x3(PlaneWords in, MutablePlaneWords out) {
  __m256i prev = _mm256_setzero_si256();
  __m256i cur = horizontal_or(load(in, 0));
  for (int x = 0; x < kPlaneSize; ++x) {
    const __m256i next =
        x + 1 < kPlaneSize ? horizontal_or(load(in, x + 1)) : _mm256_setzero_si256();
    store(out, x, _mm256_or_si256(prev, _mm256_or_si256(cur, next)));
    prev = cur;
    cur = next;
  }
}

void flood(PlaneWords seed, PlaneWords mask, MutablePlaneWords out) {
  bit_and(seed, mask, out);
  const auto relax = [&](int x) {
    const __m256i m = load(mask, x);
    const __m256i old = load(out, x);
    __m256i r = old;
    if (x > 0) r = _mm256_or_si256(r, load(out, x - 1));
    if (x + 1 < kPlaneSize) r = _mm256_or_si256(r, load(out, x + 1));
    r = fill_runs(_mm256_and_si256(r, m), m);
    if (equal(r, old)) return false;
    store(out, x, r);
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

const KernelTable& avx2_kernel_table() {
  static const KernelTable table{
      .name = "avx2",
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
