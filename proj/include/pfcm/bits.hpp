#pragma once

#include <cstdint>
#include <vector>

namespace pfcm {

using BitVec = std::vector<std::uint8_t>;
using LlrVec = std::vector<double>;

// Saturation magnitude for channel LLRs of known / noiseless bits. Internal
// LLRs (g-sums, repetition combining) may exceed this; only channel-side
// producers clamp to it.
inline constexpr double kLlrMax = 300.0;

inline bool is_pow2(int n) { return n >= 1 && (n & (n - 1)) == 0; }

// log2 of a power of two; -1 if n is not one.
inline int log2_exact(int n) {
  if (n < 1) return -1;
  int l = 0;
  while ((1 << l) < n) ++l;
  return ((1 << l) == n) ? l : -1;
}

inline double clamp_llr(double l) {
  if (l > kLlrMax) return kLlrMax;
  if (l < -kLlrMax) return -kLlrMax;
  return l;
}

}  // namespace pfcm
