#include "pfcm/hybrid_rx.hpp"

#include <stdexcept>
#include <tuple>

namespace pfcm {

namespace {

BitVec strip_crc(const BitVec& with_crc, const CrcSpec& crc) {
  return BitVec(with_crc.begin(), with_crc.end() - crc.length);
}

}  // namespace

HybridResult hybrid_decode(std::span<const cplx> y, const SplitConfig& cfg, double sigma2,
                           const HybridOptions& opt, const FadingRealization* genie) {
  cfg.validate();
  if ((int)y.size() != cfg.n_t)
    throw std::invalid_argument("hybrid_decode: packet length != N_t");
  if (opt.genie_csi && genie == nullptr)
    throw std::invalid_argument("hybrid_decode: genie CSI requested without realization");

  const auto& qam = Constellation::get(cfg.ns0);
  HybridResult res;
  res.comps.resize(cfg.blocks + 1);

  LlrVec slot_llrs;
  slot_llrs.reserve(cfg.coded_len0());
  std::vector<BitVec> parts(cfg.blocks + 1);

  std::size_t pos = 0;
  for (int b = 1; b <= cfg.blocks; ++b) {
    const std::span<const cplx> yp = y.subspan(pos, cfg.nc_pilot[b - 1]);
    pos += cfg.nc_pilot[b - 1];
    const std::span<const cplx> ydata = y.subspan(pos, cfg.data_symbols[b - 1]);
    pos += cfg.data_symbols[b - 1];

    const double mag = estimate_magnitude(yp, sigma2);
    const double offset = estimate_phase_offset(yp);
    auto blind = blind_decode_pilot(yp, cfg.comp[b], mag, offset, sigma2, opt.list_size,
                                    opt.reference_unrotate);
    res.comps[b] = ComponentStatus{blind.crc_ok, blind.m};
    parts[b] = std::move(blind.message);

    cplx h_hat;
    double var_h;
    if (opt.genie_csi) {
      h_hat = genie->h[b - 1];
      var_h = 0.0;
    } else {
      // Even after a CRC failure the re-encoded symbols are the best
      // available reference; the packet is flagged either way.
      std::tie(h_hat, var_h) = reestimate_channel(yp, blind.x_hat, sigma2);
    }
    const LlrVec d = demap_symbols(std::vector<cplx>(ydata.begin(), ydata.end()), h_hat,
                                   sigma2 + var_h, qam);
    slot_llrs.insert(slot_llrs.end(), d.begin(), d.end());
  }

  const auto pi = BicmInterleaver::seeded(cfg.coded_len0(), cfg.bicm_seed);
  const LlrVec mother = de_rate_match(bicm_deinterleave_llrs(slot_llrs, pi), cfg.comp[0].rm);

  if (cfg.crc_policy == CrcPolicy::per_component) {
    const auto r0 = scl_decode(cfg.comp[0].code, mother, opt.list_size);
    res.comps[0] = ComponentStatus{r0.crc_ok, 0};
    parts[0] = r0.message;
    BitVec message;
    for (int c = 0; c <= cfg.blocks; ++c) {
      const BitVec info = strip_crc(parts[c], cfg.comp[c].code.crc);
      message.insert(message.end(), info.begin(), info.end());
    }
    res.message = std::move(message);
    for (const auto& s : res.comps) res.detected_error |= !s.crc_ok;
    return res;
  }

  // Aggregate CRC: select the component-0 path whose segment completes a
  // passing [message | crc] with the already-decoded pilot segments
  // (pilot slices lead, component 0 holds the tail with the CRC).
  const auto paths = scl_decode_list(cfg.comp[0].code, mother, opt.list_size);
  const CrcSpec agg = CrcSpec::crc11();
  auto assemble = [&](const BitVec& part0) {
    BitVec full;
    for (int c = 1; c <= cfg.blocks; ++c)
      full.insert(full.end(), parts[c].begin(), parts[c].end());
    full.insert(full.end(), part0.begin(), part0.end());
    return full;
  };
  BitVec full = assemble(extract_message(cfg.comp[0].code, paths.front().u_hat));
  bool ok = crc_check(full, agg);
  if (!ok) {
    for (std::size_t i = 1; i < paths.size(); ++i) {
      BitVec cand = assemble(extract_message(cfg.comp[0].code, paths[i].u_hat));
      if (crc_check(cand, agg)) {
        full = std::move(cand);
        ok = true;
        break;
      }
    }
  }
  res.comps[0] = ComponentStatus{ok, 0};
  res.message = BitVec(full.begin(), full.end() - agg.length);
  res.detected_error = !ok;
  return res;
}

PilotAidedResult pilot_aided_decode(std::span<const cplx> y, const PilotAidedConfig& cfg,
                                    double sigma2, int list_size) {
  cfg.validate();
  if ((int)y.size() != cfg.n_t)
    throw std::invalid_argument("pilot_aided_decode: packet length != N_t");
  const auto pilots = cfg.pilot_sequences();
  const auto& qam = Constellation::get(cfg.ns);

  LlrVec slot_llrs;
  slot_llrs.reserve(cfg.coded_len());
  std::size_t pos = 0;
  for (int b = 0; b < cfg.blocks; ++b) {
    const std::span<const cplx> yp = y.subspan(pos, cfg.np[b]);
    pos += cfg.np[b];
    const std::span<const cplx> ydata = y.subspan(pos, cfg.data_symbols[b]);
    pos += cfg.data_symbols[b];

    cplx h_hat(1.0, 0.0);
    double var_h = 1e6;  // no pilots: treat the channel as unknown
    if (cfg.np[b] > 0) std::tie(h_hat, var_h) = reestimate_channel(yp, pilots[b], sigma2);
    const LlrVec d = demap_symbols(std::vector<cplx>(ydata.begin(), ydata.end()), h_hat,
                                   sigma2 + var_h, qam);
    slot_llrs.insert(slot_llrs.end(), d.begin(), d.end());
  }

  const auto pi = BicmInterleaver::seeded(cfg.coded_len(), cfg.bicm_seed);
  const LlrVec mother = de_rate_match(bicm_deinterleave_llrs(slot_llrs, pi), cfg.data.rm);
  const auto r = scl_decode(cfg.data.code, mother, list_size);
  return PilotAidedResult{strip_crc(r.message, cfg.data.code.crc), r.crc_ok};
}

}  // namespace pfcm
