#pragma once

#include <vector>

#include "pfcm/channel.hpp"
#include "pfcm/modem.hpp"
#include "pfcm/polar.hpp"
#include "pfcm/rate_match.hpp"

namespace pfcm {

enum class CrcPolicy {
  per_component,   // each sub-message carries its own CRC-11
  aggregate_on_0,  // one CRC-11 over the whole message, budgeted into the split
};

struct ComponentCode {
  PolarCodeSpec code;
  RateMatchSpec rm;
  int k_info = 0;  // message bits carried, excluding CRC

  // Bits the component's polar info set must hold (message share + CRC).
  int info_size() const { return (int)code.info_set.size(); }
};

// Code-splitting transmission: component 0 carries QAM data, components
// 1..B are QPSK coded pilots, one per fading block. Packet layout is
// [x_1, x_{0,1}, x_2, x_{0,2}, ...]; block b spans the b-th coded pilot
// followed by the b-th data segment.
struct SplitConfig {
  int n_t = 0;                   // channel uses
  int blocks = 0;                // fading blocks B
  int ns0 = 4;                   // modulation order of component 0
  std::vector<int> nc_pilot;     // coded-pilot symbols per block
  std::vector<int> data_symbols; // component-0 symbols per block
  CrcPolicy crc_policy = CrcPolicy::per_component;
  std::uint64_t bicm_seed = BicmInterleaver::kDefaultSeed;
  std::vector<ComponentCode> comp;  // comp[0] data, comp[1..B] pilots

  int total_k() const;           // message bits K
  int data_symbol_count() const; // N_c^0
  int coded_len0() const;        // M_0
  int block_budget() const { return n_t / blocks; }
  std::vector<int> block_symbol_counts() const;  // for sample_channel
  void validate() const;
};

// K / N_t expressed through the component rates: ns*a0*R0 + sum 2*a_b*R_b.
double effective_rate(const SplitConfig& cfg);

// Per-component messages with CRC attached according to the policy.
std::vector<BitVec> partition_message(const BitVec& message, const SplitConfig& cfg);

std::vector<cplx> encode_packet(const BitVec& message, const SplitConfig& cfg);

// Pilot-aided baseline: known pseudo-random QPSK pilots per block, one polar
// data code over the remaining symbols. Layout [p_1, d_1, p_2, d_2, ...].
struct PilotAidedConfig {
  int n_t = 0;
  int blocks = 0;
  int ns = 4;
  std::vector<int> np;            // pilot symbols per block
  std::vector<int> data_symbols;  // data symbols per block
  ComponentCode data;             // CRC-11 over the message
  std::uint64_t pilot_seed = 0x9107;
  std::uint64_t bicm_seed = BicmInterleaver::kDefaultSeed;

  int data_symbol_count() const;
  int coded_len() const;
  std::vector<int> block_symbol_counts() const;
  std::vector<std::vector<cplx>> pilot_sequences() const;
  void validate() const;
};

std::vector<cplx> pilot_aided_encode(const BitVec& message, const PilotAidedConfig& cfg);

}  // namespace pfcm
