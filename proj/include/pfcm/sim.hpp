#pragma once

#include <optional>
#include <string>

#include "pfcm/code_design.hpp"
#include "pfcm/hybrid_rx.hpp"

namespace pfcm {

enum class Scheme { coded_pilot, pilot_aided, both };

struct CampaignConfig {
  Scheme scheme = Scheme::coded_pilot;
  int k = 0;
  int m_budget = 0;  // nominal coded bits n_s * N_t; N_t derived per modulation
  int ns = 4;
  int blocks = 1;
  std::vector<int> nc_pilot;                 // fixed pilot share per block (optional)
  std::vector<int> pilot_candidates{4, 8, 16, 32};
  int list_size = 8;
  std::vector<double> snr_db;
  long min_errors = 100;
  long max_trials = 1000000;
  std::uint64_t seed = 1;
  CrcPolicy crc_policy = CrcPolicy::per_component;
  std::string out;
  double target_bler = 1e-2;
  double design_snr_min_db = -6.0;
  double design_snr_max_db = 24.0;
  double design_snr_step_db = 0.25;
  int threads = 0;  // 0 = hardware concurrency
  std::uint64_t bicm_seed = BicmInterleaver::kDefaultSeed;

  int n_t() const { return m_budget / log2_exact(ns); }
  void validate() const;
};

CampaignConfig parse_campaign_config(const std::string& json_text);
std::string campaign_config_schema();  // human-readable key list

struct CurveRow {
  std::string scheme;
  double snr_db = 0.0;
  long trials = 0;
  long block_errors = 0;
  double bler = 0.0;
  double wilson_lo = 0.0;
  double wilson_hi = 0.0;
  std::uint64_t seed = 0;
  long detected_errors = 0;
  long undetected_errors = 0;
};

struct BlerCurve {
  std::vector<CurveRow> rows;
  std::string to_csv() const;
  void write_csv(const std::string& path) const;
};

// SNR at which the curve crosses the target (log-linear interpolation);
// empty when the target is not bracketed.
std::optional<double> required_snr(const BlerCurve& curve, const std::string& scheme,
                                   double target);

// Resolved per-scheme designs used by a campaign, reported alongside CSV.
struct ResolvedDesigns {
  std::optional<SplitDesign> split;
  std::optional<DesignRequest> split_req;
  std::optional<PilotAidedRequest> pilot_req;
  int pilot_np = 0;
};

BlerCurve run_campaign(const CampaignConfig& cfg, ResolvedDesigns* designs = nullptr);

// Pilot length minimizing the SNR required to reach cfg.target_bler,
// coarse bisection per candidate at reduced trial counts. Ascending
// candidate order; strict improvement required, so ties go to the shortest.
int select_pilot_length(const CampaignConfig& cfg, const std::vector<int>& candidates);

// JSON report of a split design for the `design` CLI verb.
std::string design_report_json(const DesignRequest& req, const SplitDesign& design);

enum class FigureScale { desk, full };

// Writes CSV + summary files for one of the bundled experiment recipes
// (fig3: analysis vs Monte Carlo; fig5: scheme comparison; fig6: rate-ratio
// trends). Returns the written file paths.
std::vector<std::string> reproduce_figure(const std::string& name, FigureScale scale,
                                          const std::string& out_dir, int threads,
                                          std::uint64_t seed = 1);

}  // namespace pfcm
