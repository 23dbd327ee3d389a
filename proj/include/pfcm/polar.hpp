#pragma once

#include <vector>

#include "pfcm/bits.hpp"
#include "pfcm/crc.hpp"

namespace pfcm {

/// One polar component code: mother length, information set, optional monitor
/// positions and CRC. The frozen set is the complement of info_set; monitor
/// positions {N-2, N-1} are frozen (zero) at the transmitter but decoded as
/// information bits at a blind receiver, where their values identify the
/// pi/2 rotation multiple.
struct PolarCodeSpec {
  int n = 0;                  // mother length N = 2^levels
  std::vector<int> info_set;  // ascending u-domain indices
  bool monitor = false;       // reserve and track {N-2, N-1}
  CrcSpec crc;                // covers the bits carried in info_set

  int k() const { return (int)info_set.size(); }
  int levels() const { return log2_exact(n); }
  void validate() const;
  // 1 for info positions, 0 elsewhere (monitor positions excluded).
  std::vector<std::uint8_t> info_mask() const;
};

// u * F_2^{⊗log2(N)} over GF(2) in natural (non bit-reversed) order.
// The transform is an involution.
void polar_transform_inplace(BitVec& u);
BitVec polar_transform(BitVec u);

// Codeword bit index for processing element (j, k) at level d, N = 2^n
// levels. Level 0 pairs (j, j + N/2); level n-1 pairs adjacent bits. d = n is
// accepted with the adjacent-pair convention of the decision boundary.
int alpha_map(int d, int j, int k, int n);

// message (including any CRC bits already attached) -> codeword of length N.
BitVec polar_encode(const PolarCodeSpec& spec, const BitVec& message);

BitVec extract_message(const PolarCodeSpec& spec, const BitVec& u);

// min-sum with exact correction; equal to log((1+e^{a+b})/(e^a+e^b)).
double f_llr(double a, double b);
inline double g_llr(double a, double b, int u) { return b + (u ? -a : a); }

struct ScResult {
  BitVec u_hat;         // length N; frozen forced to 0, monitor decoded
  BitVec message;       // bits at info_set
  LlrVec decision_llr;  // u-domain decision LLR per index
};
ScResult sc_decode(const PolarCodeSpec& spec, const LlrVec& llrs);

struct SclPath {
  BitVec u_hat;
  double metric;  // accumulated penalty, lower is better
};

// Full path list sorted by metric ascending (stable; lower path index first
// on ties). Monitor positions extend paths like information bits.
std::vector<SclPath> scl_decode_list(const PolarCodeSpec& spec,
                                     const LlrVec& llrs, int list_size);

struct SclResult {
  BitVec u_hat;
  BitVec message;
  bool crc_ok;
};

// Most likely CRC-passing path when a CRC is configured, else the most
// likely path. crc_ok=false flags a detected block error.
SclResult scl_decode(const PolarCodeSpec& spec, const LlrVec& llrs,
                     int list_size);

}  // namespace pfcm
