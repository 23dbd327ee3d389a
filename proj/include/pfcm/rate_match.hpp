#pragma once

#include <vector>

#include "pfcm/bits.hpp"

namespace pfcm {

enum class RateMatchMode { none, puncture, shorten, repeat };

// Bit order the mapper sees: "standard" is quasi-uniform sub-block
// interleaving in 32 blocks; "direct" keeps mother order. Coded-pilot
// components use direct so that QPSK symbols pair adjacent codeword bits,
// which the rotation-resolution algebra requires; N < 32 also degenerates
// to direct.
enum class SubblockPattern { standard, direct };

struct RateMatchSpec {
  int mother_n = 0;  // N, power of two
  int coded_len = 0; // M, transmitted bits
  RateMatchMode mode = RateMatchMode::none;
  SubblockPattern pattern = SubblockPattern::standard;

  void validate() const;
};

// Component rate threshold: puncture below 0.55, shorten at or above; repeat
// when the target exceeds the mother length. Coded pilots never shorten.
RateMatchMode select_mode(double rate, int mother_n, int coded_len, bool coded_pilot);

// Maps interleaved slot t -> source codeword index.
std::vector<int> subblock_map(int n, SubblockPattern pattern);

BitVec subblock_interleave(const BitVec& bits,
                           SubblockPattern pattern = SubblockPattern::standard);
BitVec subblock_deinterleave(const BitVec& bits,
                             SubblockPattern pattern = SubblockPattern::standard);

// N-bit codeword -> M transmitted bits (interleave, then drop first/last
// N-M bits or append the first M-N again).
BitVec rate_match(const BitVec& codeword, const RateMatchSpec& spec);

// M received LLRs -> N mother LLRs: punctured 0, shortened +known_llr,
// repeats summed; inverse permutation applied last.
LlrVec de_rate_match(const LlrVec& llrs, const RateMatchSpec& spec,
                     double known_llr = kLlrMax);

// u-domain indices forced frozen by shortening (empty for other modes).
std::vector<int> forced_frozen_set(const RateMatchSpec& spec);

}  // namespace pfcm
