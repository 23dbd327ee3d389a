#include "pfcm/channel.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pfcm {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void philox_round(std::array<std::uint32_t, 4>& x, std::uint32_t k0,
                         std::uint32_t k1) {
  const std::uint64_t p0 = (std::uint64_t)kPhiloxM0 * x[0];
  const std::uint64_t p1 = (std::uint64_t)kPhiloxM1 * x[2];
  const std::uint32_t hi0 = (std::uint32_t)(p0 >> 32), lo0 = (std::uint32_t)p0;
  const std::uint32_t hi1 = (std::uint32_t)(p1 >> 32), lo1 = (std::uint32_t)p1;
  x = {hi1 ^ x[1] ^ k0, lo1, hi0 ^ x[3] ^ k1, lo0};
}

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t trial, std::uint32_t stream)
    : buf_pos_(4), gauss_spare_(0.0), has_spare_(false) {
  const std::uint64_t k = mix64(seed ^ mix64(0x5075ULL + stream));
  key_ = {(std::uint32_t)k, (std::uint32_t)(k >> 32)};
  counter_ = {(std::uint32_t)trial, (std::uint32_t)(trial >> 32), 0u, 0u};
}

void Rng::refill() {
  std::array<std::uint32_t, 4> x = counter_;
  std::uint32_t k0 = key_[0], k1 = key_[1];
  for (int r = 0; r < 10; ++r) {
    philox_round(x, k0, k1);
    k0 += kWeyl0;
    k1 += kWeyl1;
  }
  buf_ = x;
  buf_pos_ = 0;
  if (++counter_[2] == 0) ++counter_[3];
}

std::uint64_t Rng::next_u64() {
  if (buf_pos_ > 2) refill();
  const std::uint64_t lo = buf_[buf_pos_], hi = buf_[buf_pos_ + 1];
  buf_pos_ += 2;
  return lo | (hi << 32);
}

double Rng::uniform() { return (double)(next_u64() >> 11) * 0x1.0p-53; }

double Rng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return gauss_spare_;
  }
  // u1 in (0,1] so the log is finite.
  const double u1 = ((double)(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * M_PI * u2;
  gauss_spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

cplx Rng::cgaussian(double var_total) {
  const double s = std::sqrt(var_total / 2.0);
  return cplx(s * gaussian(), s * gaussian());
}

std::uint32_t Rng::next_below(std::uint32_t bound) {
  return (std::uint32_t)(next_u64() % bound);
}

BitVec random_bits(int count, Rng& rng) {
  BitVec out(count);
  for (int i = 0; i < count; ++i) out[i] = (std::uint8_t)(rng.next_u64() & 1);
  return out;
}

int FadingRealization::total_symbols() const {
  return std::accumulate(block_symbols.begin(), block_symbols.end(), 0);
}

void FadingRealization::validate() const {
  if (h.empty() || h.size() != block_symbols.size())
    throw std::invalid_argument("fading: block count mismatch");
  for (int s : block_symbols)
    if (s < 0) throw std::invalid_argument("fading: negative block size");
  if (sigma2 < 0) throw std::invalid_argument("fading: negative noise variance");
}

FadingRealization sample_channel(const std::vector<int>& block_symbols, double sigma2,
                                 FadingModel model, Rng& rng) {
  if (block_symbols.empty()) throw std::invalid_argument("sample_channel: B >= 1 required");
  FadingRealization real;
  real.sigma2 = sigma2;
  real.block_symbols = block_symbols;
  real.h.resize(block_symbols.size());
  for (auto& h : real.h) {
    if (model == FadingModel::unit_phase) {
      const double phi = 2.0 * M_PI * rng.uniform();
      h = cplx(std::cos(phi), std::sin(phi));
    } else {
      h = rng.cgaussian(1.0);
    }
  }
  return real;
}

std::vector<cplx> transmit(const std::vector<cplx>& x, const FadingRealization& real,
                           Rng& rng) {
  real.validate();
  if ((int)x.size() != real.total_symbols())
    throw std::invalid_argument("transmit: symbol count does not match block boundaries");
  std::vector<cplx> y(x.size());
  std::size_t pos = 0;
  for (int b = 0; b < real.blocks(); ++b) {
    for (int i = 0; i < real.block_symbols[b]; ++i, ++pos) {
      cplx v = real.sigma2 > 0 ? rng.cgaussian(real.sigma2) : cplx(0.0, 0.0);
      y[pos] = real.h[b] * x[pos] + v;
    }
  }
  return y;
}

}  // namespace pfcm
