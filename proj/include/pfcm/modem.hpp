#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "pfcm/bits.hpp"

namespace pfcm {

using cplx = std::complex<double>;

/// Gray-labeled square QAM, unit average energy. Point index is the
/// LSB-first integer of the bit tuple: index = sum_j b_j 2^j, with b_0 the
/// first (earliest) bit of the symbol group. QPSK: [0,0] -> (+1+j)/sqrt(2).
struct Constellation {
  int order = 0;
  int bits_per_symbol = 0;
  std::vector<cplx> points;

  // Cached instance for order in {4, 16, 64}.
  static const Constellation& get(int order);
};

Constellation build_constellation(int order);

// Fixed pseudo-random bit interleaver between rate matching and the symbol
// mapper. Slot i carries rate-matched bit perm[i].
struct BicmInterleaver {
  std::vector<int> perm;

  static BicmInterleaver seeded(int len, std::uint64_t seed = kDefaultSeed);
  static BicmInterleaver identity(int len);
  int size() const { return (int)perm.size(); }

  static constexpr std::uint64_t kDefaultSeed = 0x5EED;
};

BitVec bicm_interleave(const BitVec& bits, const BicmInterleaver& pi);
BitVec bicm_deinterleave(const BitVec& bits, const BicmInterleaver& pi);
// Slot-order LLRs back to rate-matched bit order.
LlrVec bicm_deinterleave_llrs(const LlrVec& slot_llrs, const BicmInterleaver& pi);

std::vector<cplx> map_symbols(const BitVec& bits, const Constellation& c);

// Exact per-bit LLRs log P(b=0|y) - log P(b=1|y) for one received symbol
// under estimated channel h_hat and effective noise variance sigma_eff2
// (thermal plus channel-estimation error). Output clamped to +-kLlrMax.
void demap_llr(cplx y, cplx h_hat, double sigma_eff2, const Constellation& c,
               double* out);

LlrVec demap_symbols(const std::vector<cplx>& y, cplx h_hat, double sigma_eff2,
                     const Constellation& c);

}  // namespace pfcm
