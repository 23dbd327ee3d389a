#pragma once

#include <optional>
#include <span>

#include "pfcm/blind_rx.hpp"

namespace pfcm {

struct HybridOptions {
  int list_size = 8;
  bool reference_unrotate = false;
  // Test hook: use the true channel with zero estimation variance instead
  // of the blind estimates.
  bool genie_csi = false;
};

struct ComponentStatus {
  bool crc_ok = false;
  int m_hat = 0;  // pilots only
};

struct HybridResult {
  BitVec message;
  bool detected_error = false;  // any CRC check failed
  std::vector<ComponentStatus> comps;  // index 0 = data component
};

// Two-stage receiver: per block, blind-decode the coded pilot and
// re-estimate the channel from its re-encoded symbols; then demap the QAM
// segments with sigma2 + sigma2/N_c^b, deinterleave, de-rate-match and
// list-decode component 0.
HybridResult hybrid_decode(std::span<const cplx> y, const SplitConfig& cfg, double sigma2,
                           const HybridOptions& opt,
                           const FadingRealization* genie = nullptr);

struct PilotAidedResult {
  BitVec message;
  bool crc_ok = false;
};

PilotAidedResult pilot_aided_decode(std::span<const cplx> y, const PilotAidedConfig& cfg,
                                    double sigma2, int list_size);

}  // namespace pfcm
