#pragma once

#include "pfcm/bits.hpp"

namespace pfcm {

// Systematic CRC over GF(2), zero initial state. The default generator is the
// 11-bit polynomial D^11 + D^10 + D^9 + D^5 + 1 (0xE21).
struct CrcSpec {
  int length = 0;        // number of parity bits (0 disables)
  BitVec poly;           // generator coefficients, degree length .. 0

  static CrcSpec none() { return CrcSpec{}; }
  static CrcSpec crc11();
};

// Appends the CRC remainder to the message.
BitVec crc_attach(const BitVec& message, const CrcSpec& crc);

// Checks a message with the CRC appended; true when the remainder is zero.
bool crc_check(const BitVec& message_with_crc, const CrcSpec& crc);

}  // namespace pfcm
