#include "pfcm/rate_match.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace pfcm {

namespace {
constexpr int kSubblockPerm[32] = {0, 1, 2, 4, 3, 5, 6,  7,  8,  16, 9,  17, 10, 18, 11, 19,
                                   12, 20, 13, 21, 14, 22, 15, 23, 24, 25, 26, 28, 27, 29, 30, 31};
}

void RateMatchSpec::validate() const {
  if (log2_exact(mother_n) < 1)
    throw std::invalid_argument("rate_match: mother length must be a power of two");
  if (coded_len < 1) throw std::invalid_argument("rate_match: coded length must be positive");
  switch (mode) {
    case RateMatchMode::none:
      if (coded_len != mother_n) throw std::invalid_argument("rate_match: none requires M == N");
      break;
    case RateMatchMode::puncture:
    case RateMatchMode::shorten:
      if (coded_len >= mother_n)
        throw std::invalid_argument("rate_match: puncture/shorten requires M < N");
      break;
    case RateMatchMode::repeat:
      if (coded_len <= mother_n)
        throw std::invalid_argument("rate_match: repeat requires M > N");
      if (coded_len > 2 * mother_n)
        throw std::invalid_argument("rate_match: repeat beyond 2N unsupported");
      break;
  }
}

RateMatchMode select_mode(double rate, int mother_n, int coded_len, bool coded_pilot) {
  if (coded_len == mother_n) return RateMatchMode::none;
  if (coded_len > mother_n) return RateMatchMode::repeat;
  if (coded_pilot) return RateMatchMode::puncture;
  return rate < 0.55 ? RateMatchMode::puncture : RateMatchMode::shorten;
}

std::vector<int> subblock_map(int n, SubblockPattern pattern) {
  std::vector<int> map(n);
  if (pattern == SubblockPattern::direct || n < 32) {
    std::iota(map.begin(), map.end(), 0);
    return map;
  }
  if (n % 32 != 0)
    throw std::invalid_argument("subblock interleaver requires length divisible by 32");
  const int chunk = n / 32;
  for (int s = 0; s < 32; ++s)
    for (int j = 0; j < chunk; ++j) map[s * chunk + j] = kSubblockPerm[s] * chunk + j;
  return map;
}

BitVec subblock_interleave(const BitVec& bits, SubblockPattern pattern) {
  const auto map = subblock_map((int)bits.size(), pattern);
  BitVec out(bits.size());
  for (std::size_t t = 0; t < bits.size(); ++t) out[t] = bits[map[t]];
  return out;
}

BitVec subblock_deinterleave(const BitVec& bits, SubblockPattern pattern) {
  const auto map = subblock_map((int)bits.size(), pattern);
  BitVec out(bits.size());
  for (std::size_t t = 0; t < bits.size(); ++t) out[map[t]] = bits[t];
  return out;
}

BitVec rate_match(const BitVec& codeword, const RateMatchSpec& spec) {
  spec.validate();
  if ((int)codeword.size() != spec.mother_n)
    throw std::invalid_argument("rate_match: codeword length != N");
  BitVec e = subblock_interleave(codeword, spec.pattern);
  const int n = spec.mother_n, m = spec.coded_len;
  switch (spec.mode) {
    case RateMatchMode::none:
      return e;
    case RateMatchMode::puncture:
      return BitVec(e.begin() + (n - m), e.end());
    case RateMatchMode::shorten:
      return BitVec(e.begin(), e.begin() + m);
    case RateMatchMode::repeat: {
      BitVec out(e);
      out.insert(out.end(), e.begin(), e.begin() + (m - n));
      return out;
    }
  }
  throw std::logic_error("rate_match: bad mode");
}

LlrVec de_rate_match(const LlrVec& llrs, const RateMatchSpec& spec, double known_llr) {
  spec.validate();
  if ((int)llrs.size() != spec.coded_len)
    throw std::invalid_argument("de_rate_match: LLR length != M");
  const int n = spec.mother_n, m = spec.coded_len;
  LlrVec e(n, 0.0);
  switch (spec.mode) {
    case RateMatchMode::none:
      e = llrs;
      break;
    case RateMatchMode::puncture:
      for (int t = 0; t < m; ++t) e[n - m + t] = llrs[t];
      break;
    case RateMatchMode::shorten:
      for (int t = 0; t < m; ++t) e[t] = llrs[t];
      for (int t = m; t < n; ++t) e[t] = known_llr;
      break;
    case RateMatchMode::repeat:
      for (int t = 0; t < n; ++t) e[t] = llrs[t];
      for (int t = n; t < m; ++t) e[t - n] += llrs[t];
      break;
  }
  const auto map = subblock_map(n, spec.pattern);
  LlrVec out(n, 0.0);
  for (int t = 0; t < n; ++t) out[map[t]] = e[t];
  return out;
}

std::vector<int> forced_frozen_set(const RateMatchSpec& spec) {
  std::vector<int> out;
  if (spec.mode != RateMatchMode::shorten) return out;
  const auto map = subblock_map(spec.mother_n, spec.pattern);
  for (int t = spec.coded_len; t < spec.mother_n; ++t) out.push_back(map[t]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace pfcm
