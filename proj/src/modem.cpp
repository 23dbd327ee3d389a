#include "pfcm/modem.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pfcm {

namespace {

// Per-axis Gray amplitude for sign bit s and up to two magnitude bits,
// following the 5G modulation tables.
double axis_amp(int order, std::uint8_t sign, std::uint8_t m1, std::uint8_t m2) {
  switch (order) {
    case 4:
      return (1.0 - 2.0 * sign);
    case 16:
      return (1.0 - 2.0 * sign) * (2.0 - (1.0 - 2.0 * m1));
    case 64:
      return (1.0 - 2.0 * sign) * (4.0 - (1.0 - 2.0 * m1) * (2.0 - (1.0 - 2.0 * m2)));
  }
  throw std::invalid_argument("constellation: unsupported order");
}

std::uint64_t splitmix64(std::uint64_t& s) {
  std::uint64_t z = (s += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

Constellation build_constellation(int order) {
  if (order != 4 && order != 16 && order != 64)
    throw std::invalid_argument("constellation: unsupported order");
  Constellation c;
  c.order = order;
  c.bits_per_symbol = log2_exact(order);
  c.points.resize(order);
  const double scale = order == 4 ? std::sqrt(0.5) : order == 16 ? 1.0 / std::sqrt(10.0)
                                                                 : 1.0 / std::sqrt(42.0);
  for (int v = 0; v < order; ++v) {
    std::uint8_t b[6] = {0, 0, 0, 0, 0, 0};
    for (int j = 0; j < c.bits_per_symbol; ++j) b[j] = (v >> j) & 1;
    const double i_amp = axis_amp(order, b[0], b[2], b[4]);
    const double q_amp = axis_amp(order, b[1], b[3], b[5]);
    c.points[v] = cplx(i_amp * scale, q_amp * scale);
  }
  return c;
}

const Constellation& Constellation::get(int order) {
  static const Constellation qpsk = build_constellation(4);
  static const Constellation qam16 = build_constellation(16);
  static const Constellation qam64 = build_constellation(64);
  switch (order) {
    case 4:
      return qpsk;
    case 16:
      return qam16;
    case 64:
      return qam64;
  }
  throw std::invalid_argument("constellation: unsupported order");
}

BicmInterleaver BicmInterleaver::seeded(int len, std::uint64_t seed) {
  BicmInterleaver pi;
  pi.perm.resize(len);
  std::iota(pi.perm.begin(), pi.perm.end(), 0);
  std::uint64_t state = seed ^ (0xA0761D6478BD642FULL + (std::uint64_t)len);
  for (int i = len - 1; i > 0; --i) {
    const int j = (int)(splitmix64(state) % (std::uint64_t)(i + 1));
    std::swap(pi.perm[i], pi.perm[j]);
  }
  return pi;
}

BicmInterleaver BicmInterleaver::identity(int len) {
  BicmInterleaver pi;
  pi.perm.resize(len);
  std::iota(pi.perm.begin(), pi.perm.end(), 0);
  return pi;
}

BitVec bicm_interleave(const BitVec& bits, const BicmInterleaver& pi) {
  if ((int)bits.size() != pi.size())
    throw std::invalid_argument("bicm: length mismatch");
  BitVec out(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) out[i] = bits[pi.perm[i]];
  return out;
}

BitVec bicm_deinterleave(const BitVec& bits, const BicmInterleaver& pi) {
  if ((int)bits.size() != pi.size())
    throw std::invalid_argument("bicm: length mismatch");
  BitVec out(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) out[pi.perm[i]] = bits[i];
  return out;
}

LlrVec bicm_deinterleave_llrs(const LlrVec& slot_llrs, const BicmInterleaver& pi) {
  if ((int)slot_llrs.size() != pi.size())
    throw std::invalid_argument("bicm: length mismatch");
  LlrVec out(slot_llrs.size());
  for (std::size_t i = 0; i < slot_llrs.size(); ++i) out[pi.perm[i]] = slot_llrs[i];
  return out;
}

std::vector<cplx> map_symbols(const BitVec& bits, const Constellation& c) {
  const int ns = c.bits_per_symbol;
  if (bits.size() % ns != 0)
    throw std::invalid_argument("map_symbols: bit count not divisible by bits/symbol");
  std::vector<cplx> out(bits.size() / ns);
  for (std::size_t s = 0; s < out.size(); ++s) {
    int v = 0;
    for (int j = 0; j < ns; ++j) v |= (int)bits[s * ns + j] << j;
    out[s] = c.points[v];
  }
  return out;
}

void demap_llr(cplx y, cplx h_hat, double sigma_eff2, const Constellation& c,
               double* out) {
  const double var = std::max(sigma_eff2, 1e-12);
  const int ns = c.bits_per_symbol;
  double t[64];
  for (int v = 0; v < c.order; ++v) t[v] = -std::norm(y - h_hat * c.points[v]) / var;
  for (int k = 0; k < ns; ++k) {
    double max0 = -1e308, max1 = -1e308;
    for (int v = 0; v < c.order; ++v) {
      if ((v >> k) & 1)
        max1 = std::max(max1, t[v]);
      else
        max0 = std::max(max0, t[v]);
    }
    double s0 = 0.0, s1 = 0.0;
    for (int v = 0; v < c.order; ++v) {
      if ((v >> k) & 1)
        s1 += std::exp(t[v] - max1);
      else
        s0 += std::exp(t[v] - max0);
    }
    out[k] = clamp_llr(max0 + std::log(s0) - max1 - std::log(s1));
  }
}

LlrVec demap_symbols(const std::vector<cplx>& y, cplx h_hat, double sigma_eff2,
                     const Constellation& c) {
  LlrVec out(y.size() * c.bits_per_symbol);
  for (std::size_t i = 0; i < y.size(); ++i)
    demap_llr(y[i], h_hat, sigma_eff2, c, out.data() + i * c.bits_per_symbol);
  return out;
}

}  // namespace pfcm
