#include "pfcm/blind_rx.hpp"

#include <cmath>
#include <stdexcept>

namespace pfcm {

double estimate_magnitude(std::span<const cplx> y, double sigma2) {
  if (y.empty()) throw std::invalid_argument("estimate_magnitude: empty block");
  if (sigma2 < 0) throw std::invalid_argument("estimate_magnitude: negative variance");
  double p = 0.0;
  for (const cplx& v : y) p += std::norm(v);
  p = p / (double)y.size() - sigma2;
  return p > 0.0 ? std::sqrt(p) : 0.0;
}

double estimate_phase_offset(std::span<const cplx> y) {
  if (y.empty()) throw std::invalid_argument("estimate_phase_offset: empty block");
  cplx s(0.0, 0.0);
  for (const cplx& v : y) {
    const double mag = std::abs(v);
    if (mag == 0.0) continue;
    const cplx v2 = v * v;
    s += v2 * v2 / (mag * mag * mag);
  }
  if (s == cplx(0.0, 0.0))
    throw std::runtime_error("estimate_phase_offset: degenerate block, no usable samples");
  double offset = 0.25 * std::atan2(s.imag(), s.real()) - M_PI / 4.0;
  // Raw value lies in (-pi/2, 0]; shift into [0, pi/2). The shift is
  // absorbed by the integer ambiguity.
  while (offset < 0.0) offset += M_PI / 2.0;
  while (offset >= M_PI / 2.0) offset -= M_PI / 2.0;
  return offset;
}

BitVec unrotate_u(const BitVec& u_hat, int m) {
  if (m < 0 || m > 3) throw std::invalid_argument("unrotate_u: m in {0..3}");
  const int n = (int)u_hat.size();
  BitVec u(u_hat);
  if (m == 0) return u;
  if (m == 2) {
    u[n - 1] ^= 1;
    return u;
  }
  // m = 1 or 3: remove the monitor translation, then invert the
  // pair-swap map (u_{2k+1} += u_{2k}; the map is an involution).
  u[n - 2] ^= 1;
  if (m == 3) u[n - 1] ^= 1;
  for (int i = 0; i + 1 < n; i += 2) u[i + 1] ^= u[i];
  return u;
}

BitVec recover_unrotated(const PolarCodeSpec& spec, const BitVec& u_hat, int m) {
  return extract_message(spec, unrotate_u(u_hat, m));
}

LlrVec blind_qpsk_llrs(std::span<const cplx> y_derot, double magnitude, double sigma2) {
  const double var = std::max(sigma2, 1e-12);
  const double scale = 2.0 * std::sqrt(2.0) * magnitude / var;
  LlrVec llrs(2 * y_derot.size());
  for (std::size_t i = 0; i < y_derot.size(); ++i) {
    llrs[2 * i] = clamp_llr(scale * y_derot[i].real());
    llrs[2 * i + 1] = clamp_llr(scale * y_derot[i].imag());
  }
  return llrs;
}

namespace {

int monitor_to_m(std::uint8_t u_nm2, std::uint8_t u_nm1) {
  // [0,0]->0, [1,0]->1, [0,1]->2, [1,1]->3 (multiples of pi/2).
  return (int)u_nm2 | ((int)u_nm1 << 1);
}

std::vector<cplx> remodulate(const ComponentCode& cc, const BitVec& message) {
  const BitVec coded = rate_match(polar_encode(cc.code, message), cc.rm);
  return map_symbols(coded, Constellation::get(4));
}

}  // namespace

BlindPilotResult blind_decode_pilot(std::span<const cplx> y, const ComponentCode& cc,
                                    double magnitude, double phase_offset, double sigma2,
                                    int list_size, bool reference_path) {
  if (!cc.code.monitor)
    throw std::invalid_argument("blind_decode_pilot: component is not a coded pilot");
  if (2 * (int)y.size() != cc.rm.coded_len)
    throw std::invalid_argument("blind_decode_pilot: block length mismatch");

  const cplx derot = std::polar(1.0, -phase_offset);
  std::vector<cplx> yd(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) yd[i] = y[i] * derot;

  const LlrVec mother = de_rate_match(blind_qpsk_llrs(yd, magnitude, sigma2), cc.rm);
  const auto paths = scl_decode_list(cc.code, mother, list_size);

  const int n = cc.code.n;
  BlindPilotResult res;
  bool picked = false;
  for (const auto& p : paths) {
    const int m = monitor_to_m(p.u_hat[n - 2], p.u_hat[n - 1]);
    BitVec msg = recover_unrotated(cc.code, p.u_hat, m);
    const bool ok = cc.code.crc.length == 0 || crc_check(msg, cc.code.crc);
    if (!picked) {  // best-metric fallback
      res = BlindPilotResult{msg, m, {}, ok, p.metric};
      picked = true;
    }
    if (ok && cc.code.crc.length > 0) {
      res = BlindPilotResult{std::move(msg), m, {}, true, p.metric};
      break;
    }
    if (cc.code.crc.length == 0) break;
  }

  if (reference_path) {
    // Re-decode with the integer rotation removed; monitor bits come out
    // zero and the message reads off the info set directly.
    const cplx extra = std::polar(1.0, -res.m * M_PI / 2.0);
    std::vector<cplx> y2(yd.size());
    for (std::size_t i = 0; i < yd.size(); ++i) y2[i] = yd[i] * extra;
    const LlrVec mother2 = de_rate_match(blind_qpsk_llrs(y2, magnitude, sigma2), cc.rm);
    const auto r2 = scl_decode(cc.code, mother2, list_size);
    res.message = r2.message;
    res.crc_ok = cc.code.crc.length == 0 || r2.crc_ok;
  }

  res.x_hat = remodulate(cc, res.message);
  return res;
}

std::pair<cplx, double> reestimate_channel(std::span<const cplx> y,
                                           std::span<const cplx> x_hat, double sigma2) {
  if (y.size() != x_hat.size() || y.empty())
    throw std::invalid_argument("reestimate_channel: length mismatch");
  cplx acc(0.0, 0.0);
  for (std::size_t i = 0; i < y.size(); ++i) acc += y[i] * std::conj(x_hat[i]);
  const double n = (double)y.size();
  return {acc / n, sigma2 / n};
}

}  // namespace pfcm
