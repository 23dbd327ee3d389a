#include "pfcm/crc.hpp"

#include <stdexcept>

namespace pfcm {

CrcSpec CrcSpec::crc11() {
  CrcSpec c;
  c.length = 11;
  c.poly = BitVec{1, 1, 1, 0, 0, 0, 1, 0, 0, 0, 0, 1};  // D^11+D^10+D^9+D^5+1
  return c;
}

static BitVec remainder(const BitVec& message, const CrcSpec& crc) {
  BitVec work(message);
  work.resize(message.size() + crc.length, 0);
  for (std::size_t i = 0; i < message.size(); ++i) {
    if (!work[i]) continue;
    for (int j = 0; j <= crc.length; ++j) work[i + j] ^= crc.poly[j];
  }
  return BitVec(work.end() - crc.length, work.end());
}

BitVec crc_attach(const BitVec& message, const CrcSpec& crc) {
  if (crc.length == 0) return message;
  if ((int)crc.poly.size() != crc.length + 1)
    throw std::invalid_argument("crc: polynomial degree mismatch");
  BitVec out(message);
  BitVec rem = remainder(message, crc);
  out.insert(out.end(), rem.begin(), rem.end());
  return out;
}

bool crc_check(const BitVec& message_with_crc, const CrcSpec& crc) {
  if (crc.length == 0) return true;
  if ((int)message_with_crc.size() < crc.length) return false;
  BitVec message(message_with_crc.begin(), message_with_crc.end() - crc.length);
  BitVec rem = remainder(message, crc);
  for (int j = 0; j < crc.length; ++j)
    if (rem[j] != message_with_crc[message.size() + j]) return false;
  return true;
}

}  // namespace pfcm
