#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "pfcm/modem.hpp"

namespace pfcm {

// Counter-based generator (Philox4x32-10) keyed by (seed, trial, stream).
// Draw sequences depend only on the key, so parallel trials reproduce
// bit-exactly regardless of scheduling.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t trial, std::uint32_t stream);

  std::uint64_t next_u64();
  double uniform();   // [0, 1)
  double gaussian();  // standard normal, Box-Muller
  cplx cgaussian(double var_total);
  std::uint32_t next_below(std::uint32_t bound);

  static constexpr std::uint32_t kStreamMessage = 0;
  static constexpr std::uint32_t kStreamChannel = 1;
  static constexpr std::uint32_t kStreamNoise = 2;
  static constexpr std::uint32_t kStreamPilot = 3;

 private:
  void refill();
  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> counter_;
  std::array<std::uint32_t, 4> buf_;
  int buf_pos_;
  double gauss_spare_;
  bool has_spare_;
};

BitVec random_bits(int count, Rng& rng);

enum class FadingModel { unit_phase, rayleigh };

// One packet's channel draw: per-block complex gains, the noise variance
// (total per complex dimension, SNR = 1/sigma2) and block symbol counts.
struct FadingRealization {
  std::vector<cplx> h;
  double sigma2 = 0.0;
  std::vector<int> block_symbols;

  int blocks() const { return (int)h.size(); }
  int total_symbols() const;
  void validate() const;
};

FadingRealization sample_channel(const std::vector<int>& block_symbols, double sigma2,
                                 FadingModel model, Rng& rng);

// y = h_b x + v per block, v ~ CN(0, sigma2 I).
std::vector<cplx> transmit(const std::vector<cplx>& x, const FadingRealization& real,
                           Rng& rng);

inline double snr_db_to_sigma2(double snr_db) { return std::pow(10.0, -snr_db / 10.0); }

}  // namespace pfcm
