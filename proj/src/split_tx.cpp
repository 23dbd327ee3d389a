#include "pfcm/split_tx.hpp"

#include <numeric>
#include <stdexcept>

namespace pfcm {

int SplitConfig::total_k() const {
  int k = 0;
  for (const auto& c : comp) k += c.k_info;
  return k;
}

int SplitConfig::data_symbol_count() const {
  return std::accumulate(data_symbols.begin(), data_symbols.end(), 0);
}

int SplitConfig::coded_len0() const {
  return data_symbol_count() * log2_exact(ns0);
}

std::vector<int> SplitConfig::block_symbol_counts() const {
  std::vector<int> out(blocks);
  for (int b = 0; b < blocks; ++b) out[b] = nc_pilot[b] + data_symbols[b];
  return out;
}

void SplitConfig::validate() const {
  if (blocks < 1) throw std::invalid_argument("split: B >= 1 required");
  if ((int)nc_pilot.size() != blocks || (int)data_symbols.size() != blocks)
    throw std::invalid_argument("split: per-block sizes must have B entries");
  if ((int)comp.size() != blocks + 1)
    throw std::invalid_argument("split: expected B+1 component codes");
  if (ns0 != 4 && ns0 != 16 && ns0 != 64)
    throw std::invalid_argument("split: unsupported modulation order");
  int uses = 0;
  for (int b = 0; b < blocks; ++b) {
    if (nc_pilot[b] < 4) throw std::invalid_argument("split: coded pilot needs >= 4 symbols");
    if (data_symbols[b] < 0) throw std::invalid_argument("split: negative data share");
    uses += nc_pilot[b] + data_symbols[b];
  }
  if (uses != n_t) throw std::invalid_argument("split: symbol budgets must sum to N_t");
  const auto& c0 = comp[0];
  c0.code.validate();
  c0.rm.validate();
  if (c0.rm.coded_len != coded_len0())
    throw std::invalid_argument("split: component-0 coded length mismatch");
  if (c0.code.n != c0.rm.mother_n)
    throw std::invalid_argument("split: component-0 mother length mismatch");
  for (int b = 1; b <= blocks; ++b) {
    const auto& cb = comp[b];
    cb.code.validate();
    cb.rm.validate();
    if (cb.k_info < 1) throw std::invalid_argument("split: coded pilot needs >= 1 info bit");
    if (!cb.code.monitor)
      throw std::invalid_argument("split: coded pilot requires monitor positions");
    if (cb.code.n < 8) throw std::invalid_argument("split: coded-pilot mother < 8");
    if (cb.rm.mode == RateMatchMode::shorten)
      throw std::invalid_argument("split: coded pilots must not shorten");
    if (cb.rm.pattern != SubblockPattern::direct)
      throw std::invalid_argument("split: coded pilots use the direct bit order");
    if (cb.rm.coded_len != 2 * nc_pilot[b - 1])
      throw std::invalid_argument("split: coded-pilot length must be 2*N_c^b");
    if (cb.code.n != cb.rm.mother_n)
      throw std::invalid_argument("split: coded-pilot mother length mismatch");
  }
}

double effective_rate(const SplitConfig& cfg) {
  const double ns = log2_exact(cfg.ns0);
  double r = ns * ((double)cfg.data_symbol_count() / cfg.n_t) *
             ((double)cfg.comp[0].k_info / cfg.coded_len0());
  for (int b = 1; b <= cfg.blocks; ++b)
    r += 2.0 * ((double)cfg.nc_pilot[b - 1] / cfg.n_t) *
         ((double)cfg.comp[b].k_info / cfg.comp[b].rm.coded_len);
  return r;
}

std::vector<BitVec> partition_message(const BitVec& message, const SplitConfig& cfg) {
  if ((int)message.size() != cfg.total_k())
    throw std::invalid_argument("encode_packet: message length != K");
  std::vector<BitVec> parts(cfg.blocks + 1);
  if (cfg.crc_policy == CrcPolicy::per_component) {
    std::size_t pos = 0;
    for (int c = 0; c <= cfg.blocks; ++c) {
      BitVec part(message.begin() + pos, message.begin() + pos + cfg.comp[c].k_info);
      pos += cfg.comp[c].k_info;
      parts[c] = crc_attach(part, cfg.comp[c].code.crc);
    }
  } else {
    // One CRC over the whole message; [message | crc] partitioned by the
    // components' info capacities, pilots first so the CRC tail lands in
    // component 0's segment.
    BitVec full = crc_attach(message, CrcSpec::crc11());
    std::size_t pos = 0;
    for (int c = 1; c <= cfg.blocks; ++c) {
      const int take = cfg.comp[c].info_size();
      parts[c] = BitVec(full.begin() + pos, full.begin() + pos + take);
      pos += take;
    }
    parts[0] = BitVec(full.begin() + pos, full.end());
    if ((int)parts[0].size() != cfg.comp[0].info_size())
      throw std::invalid_argument("encode_packet: aggregate split sizes inconsistent");
  }
  for (int c = 0; c <= cfg.blocks; ++c)
    if ((int)parts[c].size() != cfg.comp[c].info_size())
      throw std::invalid_argument("encode_packet: component info size mismatch");
  return parts;
}

namespace {

std::vector<cplx> modulate_component(const BitVec& with_crc, const ComponentCode& cc,
                                     const Constellation& c,
                                     const BicmInterleaver* pi) {
  BitVec coded = rate_match(polar_encode(cc.code, with_crc), cc.rm);
  if (pi) coded = bicm_interleave(coded, *pi);
  return map_symbols(coded, c);
}

}  // namespace

std::vector<cplx> encode_packet(const BitVec& message, const SplitConfig& cfg) {
  cfg.validate();
  const auto parts = partition_message(message, cfg);
  const auto pi = BicmInterleaver::seeded(cfg.coded_len0(), cfg.bicm_seed);
  const auto x0 =
      modulate_component(parts[0], cfg.comp[0], Constellation::get(cfg.ns0), &pi);
  std::vector<cplx> out;
  out.reserve(cfg.n_t);
  std::size_t data_pos = 0;
  for (int b = 1; b <= cfg.blocks; ++b) {
    const auto xb = modulate_component(parts[b], cfg.comp[b], Constellation::get(4), nullptr);
    out.insert(out.end(), xb.begin(), xb.end());
    out.insert(out.end(), x0.begin() + data_pos, x0.begin() + data_pos + cfg.data_symbols[b - 1]);
    data_pos += cfg.data_symbols[b - 1];
  }
  return out;
}

int PilotAidedConfig::data_symbol_count() const {
  return std::accumulate(data_symbols.begin(), data_symbols.end(), 0);
}

int PilotAidedConfig::coded_len() const {
  return data_symbol_count() * log2_exact(ns);
}

std::vector<int> PilotAidedConfig::block_symbol_counts() const {
  std::vector<int> out(blocks);
  for (int b = 0; b < blocks; ++b) out[b] = np[b] + data_symbols[b];
  return out;
}

std::vector<std::vector<cplx>> PilotAidedConfig::pilot_sequences() const {
  std::vector<std::vector<cplx>> out(blocks);
  const auto& qpsk = Constellation::get(4);
  for (int b = 0; b < blocks; ++b) {
    Rng rng(pilot_seed, (std::uint64_t)b, Rng::kStreamPilot);
    out[b] = map_symbols(random_bits(2 * np[b], rng), qpsk);
  }
  return out;
}

void PilotAidedConfig::validate() const {
  if (blocks < 1) throw std::invalid_argument("pilot-aided: B >= 1 required");
  if ((int)np.size() != blocks || (int)data_symbols.size() != blocks)
    throw std::invalid_argument("pilot-aided: per-block sizes must have B entries");
  if (ns != 4 && ns != 16 && ns != 64)
    throw std::invalid_argument("pilot-aided: unsupported modulation order");
  int uses = 0;
  for (int b = 0; b < blocks; ++b) {
    if (np[b] < 0 || data_symbols[b] < 0)
      throw std::invalid_argument("pilot-aided: negative block share");
    uses += np[b] + data_symbols[b];
  }
  if (uses != n_t) throw std::invalid_argument("pilot-aided: symbol budgets must sum to N_t");
  data.code.validate();
  data.rm.validate();
  if (data.rm.coded_len != coded_len())
    throw std::invalid_argument("pilot-aided: coded length mismatch");
  if (data.code.n != data.rm.mother_n)
    throw std::invalid_argument("pilot-aided: mother length mismatch");
}

std::vector<cplx> pilot_aided_encode(const BitVec& message, const PilotAidedConfig& cfg) {
  cfg.validate();
  if ((int)message.size() != cfg.data.k_info)
    throw std::invalid_argument("pilot_aided_encode: message length != K");
  const BitVec with_crc = crc_attach(message, cfg.data.code.crc);
  const auto pi = BicmInterleaver::seeded(cfg.coded_len(), cfg.bicm_seed);
  const auto xd =
      modulate_component(with_crc, cfg.data, Constellation::get(cfg.ns), &pi);
  const auto pilots = cfg.pilot_sequences();
  std::vector<cplx> out;
  out.reserve(cfg.n_t);
  std::size_t data_pos = 0;
  for (int b = 0; b < cfg.blocks; ++b) {
    out.insert(out.end(), pilots[b].begin(), pilots[b].end());
    out.insert(out.end(), xd.begin() + data_pos, xd.begin() + data_pos + cfg.data_symbols[b]);
    data_pos += cfg.data_symbols[b];
  }
  return out;
}

}  // namespace pfcm
