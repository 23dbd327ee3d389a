#pragma once

#include <span>
#include <utility>

#include "pfcm/split_tx.hpp"

namespace pfcm {

// |h| from the constant-modulus property: sqrt(max(0, mean|y|^2 - sigma2)).
double estimate_magnitude(std::span<const cplx> y, double sigma2);

// Fractional phase offset in [0, pi/2) from the fourth-power statistic
// (Viterbi-Viterbi). Zero samples are skipped; throws on all-zero input.
double estimate_phase_offset(std::span<const cplx> y);

// u-domain inverse of the codeword transformation induced by a rotation of
// m*pi/2 on the QPSK symbols (adjacent-pair permutation plus the monitor
// translation).
BitVec unrotate_u(const BitVec& u_hat, int m);

// Decoded rotated u vector -> transmitted message bits (info positions of
// the m = 0 word, CRC still attached).
BitVec recover_unrotated(const PolarCodeSpec& spec, const BitVec& u_hat, int m);

struct BlindPilotResult {
  BitVec message;            // info bits incl. CRC of the selected path
  int m = 0;                 // resolved integer ambiguity
  std::vector<cplx> x_hat;   // re-encoded, re-modulated symbol estimate
  bool crc_ok = false;
  double metric = 0.0;
};

// One coded-pilot block: derotate by the fractional offset, QPSK LLRs with
// magnitude |h| and variance sigma2, de-rate-match, list-decode the extended
// code (monitor positions as information), resolve m per path, select the
// best CRC-passing candidate. With reference_path=true the message is
// recovered by a second decode of the input derotated by -m*pi/2 instead of
// the algebraic correction.
BlindPilotResult blind_decode_pilot(std::span<const cplx> y, const ComponentCode& cc,
                                    double magnitude, double phase_offset, double sigma2,
                                    int list_size, bool reference_path = false);

// ML correlation estimate against the re-encoded symbols; variance
// sigma2 / (symbols correlated).
std::pair<cplx, double> reestimate_channel(std::span<const cplx> y,
                                           std::span<const cplx> x_hat, double sigma2);

// QPSK LLRs of a derotated block under a real-valued channel gain.
LlrVec blind_qpsk_llrs(std::span<const cplx> y_derot, double magnitude, double sigma2);

}  // namespace pfcm
