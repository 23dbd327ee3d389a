#pragma once

#include <span>
#include <vector>

#include "pfcm/split_tx.hpp"

namespace pfcm {

// ---- BICM channel analysis ------------------------------------------------

/// Equivalent BI-AWGN noise variances per bit level of a constellation at a
/// given complex-noise variance, obtained by matching per-level mutual
/// information.
struct BitLevelProfile {
  int order = 0;
  double sigma2 = 0.0;
  std::vector<double> sigma_k2;
};

// Mutual information (bits) of the k-th BICM parallel channel, 2-D
// Gauss-Hermite quadrature of degree 24 per dimension.
double bicm_bit_mi(const Constellation& c, int k, double sigma2);

// Capacity of the unit-amplitude binary-input AWGN channel (1-D quadrature,
// degree 48), and its inverse by bisection on the variance.
double biawgn_mi(double sigma_k2);
double match_equivalent_snr(double i_target);

BitLevelProfile build_bit_level_profile(int order, double sigma2);

// ---- density evolution ------------------------------------------------------

// E[tanh(X/2)], X ~ N(mu, 2*mu); two-branch approximation with the upper
// branch scaled for continuity at the seam, output in [0, 1).
double psi(double mu);
double psi_inv(double v);

struct DegaProfile {
  std::vector<double> mean;  // decision-level LLR mean per u index
};

// Propagates per-codeword-bit initial means through all transform levels
// (upper branch psi_inv(psi*psi), lower branch sum).
DegaProfile dega_evolve(int n, const std::vector<double>& initial_means);

// Initial mean vectors in mother-codeword order. Punctured positions start
// at 0, shortened at 2*kLlrMax, repeats add.
std::vector<double> pilot_initial_means(double sigma2, const RateMatchSpec& rm);
std::vector<double> component0_initial_means(int ns0, const std::vector<int>& data_symbols,
                                             const std::vector<BitLevelProfile>& block_profiles,
                                             const BicmInterleaver& pi,
                                             const RateMatchSpec& rm);

// Top-k selection by decision mean; ties toward the larger index; monitor
// positions and forced-frozen indices excluded.
PolarCodeSpec construct_code(int n, int k, const DegaProfile& profile, bool monitor,
                             const std::vector<int>& forced_frozen, const CrcSpec& crc);

// 1 - prod(1 - Q(sqrt(mu/2))) over the info set, monitor positions included
// for coded pilots (their errors break rotation resolution).
double dega_block_error(const PolarCodeSpec& spec, const DegaProfile& profile);

double overall_error(std::span<const double> per_component);

// ---- split optimization -----------------------------------------------------

int mother_for(int coded_len);

struct DesignRequest {
  int n_t = 0;
  int blocks = 1;
  int ns0 = 4;
  std::vector<int> nc_pilot;       // coded-pilot symbols per block
  int k = 0;                       // message bits
  CrcPolicy crc_policy = CrcPolicy::per_component;
  double target_bler = 1e-2;
  double snr_min_db = -6.0;
  double snr_max_db = 24.0;
  double snr_step_db = 0.25;
  std::uint64_t bicm_seed = BicmInterleaver::kDefaultSeed;
  int min_pilot_info = 1;          // lower bound on each pilot's message bits
  int max_pilot_info = 0;          // 0 = bound by usable positions

  std::vector<int> data_symbols() const;  // block budget minus pilot share
  void validate() const;
};

struct SplitAllocation {
  std::vector<int> info_sizes;  // polar info-set size per component (0..B)
};

struct SplitDesign {
  double design_snr_db = 0.0;
  bool met_target = false;
  double predicted_bler = 1.0;
  std::vector<double> predicted_component_bler;
  SplitAllocation alloc;
  std::vector<ComponentCode> comp;
};

// Ascending SNR search: at each grid point enumerate feasible allocations,
// keep the overall-BLER minimizer (ties to the lexicographically smallest
// pilot allocation), stop at the first point meeting the target.
SplitDesign optimize_split(const DesignRequest& req);

// Minimum overall BLER over allocations at one SNR (exposed for tests).
double evaluate_min_bler(const DesignRequest& req, double snr_db,
                         SplitAllocation* best = nullptr);

SplitConfig make_split_config(const DesignRequest& req, const SplitDesign& design);

// Predicted overall BLER of a fixed split configuration at a given SNR
// (means rebuilt at that SNR, info sets held fixed).
double split_predicted_bler(const SplitConfig& cfg, double snr_db);

// ---- pilot-aided baseline design -------------------------------------------

struct PilotAidedRequest {
  int n_t = 0;
  int blocks = 1;
  int ns = 4;
  std::vector<int> np;  // pilot symbols per block
  int k = 0;
  std::uint64_t bicm_seed = BicmInterleaver::kDefaultSeed;
  std::uint64_t pilot_seed = 0x9107;

  std::vector<int> data_symbols() const;
  void validate() const;
};

// Single data code constructed at the given SNR with the estimation-error
// penalty sigma2 + sigma2/N_p^b folded into each block's bit levels.
PilotAidedConfig make_pilot_aided_config(const PilotAidedRequest& req, double snr_db);
double pilot_aided_predicted_bler(const PilotAidedRequest& req, double snr_db);

}  // namespace pfcm
