#include "pfcm/polar.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

namespace pfcm {

void PolarCodeSpec::validate() const {
  if (log2_exact(n) < 1) throw std::invalid_argument("polar: N must be a power of two >= 2");
  int prev = -1;
  for (int i : info_set) {
    if (i <= prev) throw std::invalid_argument("polar: info_set must be strictly ascending");
    if (i < 0 || i >= n) throw std::invalid_argument("polar: info index out of range");
    prev = i;
  }
  if (monitor) {
    if (n < 4) throw std::invalid_argument("polar: monitor requires N >= 4");
    for (int i : info_set)
      if (i == n - 2 || i == n - 1)
        throw std::invalid_argument("polar: monitor positions must be frozen");
  }
  if (crc.length > k()) throw std::invalid_argument("polar: CRC longer than info set");
}

std::vector<std::uint8_t> PolarCodeSpec::info_mask() const {
  std::vector<std::uint8_t> mask(n, 0);
  for (int i : info_set) mask[i] = 1;
  return mask;
}

void polar_transform_inplace(BitVec& u) {
  const int n = (int)u.size();
  if (log2_exact(n) < 0) throw std::invalid_argument("polar_transform: length must be a power of two");
  for (int step = 1; step < n; step <<= 1)
    for (int i = 0; i < n; i += 2 * step)
      for (int j = 0; j < step; ++j) u[i + j] ^= u[i + j + step];
}

BitVec polar_transform(BitVec u) {
  polar_transform_inplace(u);
  return u;
}

int alpha_map(int d, int j, int k, int n) {
  const int N = 1 << n;
  if (n < 1 || d < 0 || d > n || j < 0 || j >= N / 2 || (k != 1 && k != 2))
    throw std::invalid_argument("alpha_map: index out of range");
  if (d == n) return 2 * j + (k - 1);  // decision-boundary convention
  const int half = 1 << (n - d - 1);
  const int q = j / half;
  return q * (half << 1) + (j - q * half) + (k - 1) * half;
}

BitVec polar_encode(const PolarCodeSpec& spec, const BitVec& message) {
  spec.validate();
  if ((int)message.size() != spec.k())
    throw std::invalid_argument("polar_encode: message length != |info_set|");
  BitVec u(spec.n, 0);
  for (int i = 0; i < spec.k(); ++i) u[spec.info_set[i]] = message[i];
  polar_transform_inplace(u);
  return u;
}

BitVec extract_message(const PolarCodeSpec& spec, const BitVec& u) {
  BitVec m(spec.k());
  for (int i = 0; i < spec.k(); ++i) m[i] = u[spec.info_set[i]];
  return m;
}

double f_llr(double a, double b) {
  const double sgn = ((a < 0) != (b < 0)) ? -1.0 : 1.0;
  const double mag = std::min(std::fabs(a), std::fabs(b));
  return sgn * mag + std::log1p(std::exp(-std::fabs(a + b))) -
         std::log1p(std::exp(-std::fabs(a - b)));
}

namespace {

// Recursive SC over natural-order halves: upper = f(l_i, l_{i+len/2}).
// Returns the codeword of the decoded sub-block; decisions recorded in ctx.
struct ScCtx {
  const std::vector<std::uint8_t>* decision_mask;  // 1 = decide by sign
  BitVec* u_hat;
  LlrVec* decision_llr;
};

BitVec sc_recurse(const double* llr, int len, int base, ScCtx& ctx) {
  if (len == 1) {
    (*ctx.decision_llr)[base] = llr[0];
    std::uint8_t bit = 0;
    if ((*ctx.decision_mask)[base]) bit = (llr[0] < 0.0) ? 1 : 0;
    (*ctx.u_hat)[base] = bit;
    return BitVec{bit};
  }
  const int half = len / 2;
  std::vector<double> tmp(half);
  for (int i = 0; i < half; ++i) tmp[i] = f_llr(llr[i], llr[i + half]);
  BitVec x_up = sc_recurse(tmp.data(), half, base, ctx);
  for (int i = 0; i < half; ++i) tmp[i] = g_llr(llr[i], llr[i + half], x_up[i]);
  BitVec x_low = sc_recurse(tmp.data(), half, base + half, ctx);
  BitVec out(len);
  for (int i = 0; i < half; ++i) {
    out[i] = x_up[i] ^ x_low[i];
    out[i + half] = x_low[i];
  }
  return out;
}

std::vector<std::uint8_t> decision_mask(const PolarCodeSpec& spec) {
  auto mask = spec.info_mask();
  if (spec.monitor) {
    mask[spec.n - 2] = 1;
    mask[spec.n - 1] = 1;
  }
  return mask;
}

}  // namespace

ScResult sc_decode(const PolarCodeSpec& spec, const LlrVec& llrs) {
  spec.validate();
  if ((int)llrs.size() != spec.n)
    throw std::invalid_argument("sc_decode: LLR length != N");
  ScResult res;
  res.u_hat.assign(spec.n, 0);
  res.decision_llr.assign(spec.n, 0.0);
  auto mask = decision_mask(spec);
  ScCtx ctx{&mask, &res.u_hat, &res.decision_llr};
  sc_recurse(llrs.data(), spec.n, 0, ctx);
  res.message = extract_message(spec, res.u_hat);
  return res;
}

namespace {

// LLR-domain list decoder with lazy array copies. One array index per
// (level, slot) covers both the LLR and the bit plane; shared slabs are
// content-identical, so read access never copies.
class SclDecoder {
 public:
  SclDecoder(const PolarCodeSpec& spec, int list_size)
      : n_(spec.n), m_(spec.levels()), L_(list_size) {
    mask_ = decision_mask(spec);
    llr_.resize((m_ + 1) * L_);
    bits_.resize((m_ + 1) * L_);
    for (int lam = 0; lam <= m_; ++lam) {
      const int sz = 1 << (m_ - lam);
      for (int s = 0; s < L_; ++s) {
        llr_[idx(lam, s)].assign(sz, 0.0);
        bits_[idx(lam, s)].assign(2 * sz, 0);
      }
    }
    path_to_array_.assign((m_ + 1) * L_, 0);
    ref_count_.assign((m_ + 1) * L_, 0);
    inactive_arrays_.resize(m_ + 1);
    for (int lam = 0; lam <= m_; ++lam)
      for (int s = L_ - 1; s >= 0; --s) inactive_arrays_[lam].push_back(s);
    active_.assign(L_, false);
    metric_.assign(L_, 0.0);
    u_hist_.assign(L_, BitVec(n_, 0));
    for (int l = L_ - 1; l >= 0; --l) inactive_paths_.push_back(l);
  }

  std::vector<SclPath> run(const LlrVec& ch_llrs) {
    const int l0 = assign_initial_path();
    std::copy(ch_llrs.begin(), ch_llrs.end(), writable_llr(0, l0));
    for (int phi = 0; phi < n_; ++phi) {
      calc_llr(m_, phi);
      if (mask_[phi])
        extend_decision(phi);
      else
        extend_frozen(phi);
      if (phi & 1) update_bits(m_, phi);
    }
    std::vector<SclPath> out;
    std::vector<int> order;
    for (int l = 0; l < L_; ++l)
      if (active_[l]) order.push_back(l);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return metric_[a] < metric_[b];
    });
    for (int l : order) out.push_back(SclPath{u_hist_[l], metric_[l]});
    return out;
  }

 private:
  int idx(int lam, int s) const { return lam * L_ + s; }

  int assign_initial_path() {
    const int l = inactive_paths_.back();
    inactive_paths_.pop_back();
    active_[l] = true;
    metric_[l] = 0.0;
    for (int lam = 0; lam <= m_; ++lam) {
      const int s = inactive_arrays_[lam].back();
      inactive_arrays_[lam].pop_back();
      path_to_array_[idx(lam, l)] = s;
      ref_count_[idx(lam, s)] = 1;
    }
    return l;
  }

  int clone_path(int l) {
    const int l2 = inactive_paths_.back();
    inactive_paths_.pop_back();
    active_[l2] = true;
    metric_[l2] = metric_[l];
    u_hist_[l2] = u_hist_[l];
    for (int lam = 0; lam <= m_; ++lam) {
      const int s = path_to_array_[idx(lam, l)];
      path_to_array_[idx(lam, l2)] = s;
      ++ref_count_[idx(lam, s)];
    }
    return l2;
  }

  void kill_path(int l) {
    active_[l] = false;
    inactive_paths_.push_back(l);
    for (int lam = 0; lam <= m_; ++lam) {
      const int s = path_to_array_[idx(lam, l)];
      if (--ref_count_[idx(lam, s)] == 0) inactive_arrays_[lam].push_back(s);
    }
  }

  int own_array(int lam, int l) {
    const int s = path_to_array_[idx(lam, l)];
    if (ref_count_[idx(lam, s)] == 1) return s;
    --ref_count_[idx(lam, s)];
    const int s2 = inactive_arrays_[lam].back();
    inactive_arrays_[lam].pop_back();
    llr_[idx(lam, s2)] = llr_[idx(lam, s)];
    bits_[idx(lam, s2)] = bits_[idx(lam, s)];
    path_to_array_[idx(lam, l)] = s2;
    ref_count_[idx(lam, s2)] = 1;
    return s2;
  }

  double* writable_llr(int lam, int l) { return llr_[idx(lam, own_array(lam, l))].data(); }
  std::uint8_t* writable_bits(int lam, int l) { return bits_[idx(lam, own_array(lam, l))].data(); }
  const double* read_llr(int lam, int l) const {
    return llr_[idx(lam, path_to_array_[idx(lam, l)])].data();
  }
  const std::uint8_t* read_bits(int lam, int l) const {
    return bits_[idx(lam, path_to_array_[idx(lam, l)])].data();
  }

  void calc_llr(int lam, int phi) {
    if (lam == 0) return;
    if ((phi & 1) == 0) calc_llr(lam - 1, phi >> 1);
    const int sz = 1 << (m_ - lam);
    for (int l = 0; l < L_; ++l) {
      if (!active_[l]) continue;
      double* p = writable_llr(lam, l);
      const double* q = read_llr(lam - 1, l);
      if ((phi & 1) == 0) {
        for (int b = 0; b < sz; ++b) p[b] = f_llr(q[2 * b], q[2 * b + 1]);
      } else {
        const std::uint8_t* c = read_bits(lam, l);
        for (int b = 0; b < sz; ++b) p[b] = g_llr(q[2 * b], q[2 * b + 1], c[2 * b]);
      }
    }
  }

  void update_bits(int lam, int phi) {
    const int psi = phi >> 1;
    const int sz = 1 << (m_ - lam);
    for (int l = 0; l < L_; ++l) {
      if (!active_[l]) continue;
      const std::uint8_t* c = read_bits(lam, l);
      std::uint8_t* d = writable_bits(lam - 1, l);
      for (int b = 0; b < sz; ++b) {
        d[2 * (2 * b) + (psi & 1)] = c[2 * b] ^ c[2 * b + 1];
        d[2 * (2 * b + 1) + (psi & 1)] = c[2 * b + 1];
      }
    }
    if (psi & 1) update_bits(lam - 1, psi);
  }

  void set_bit(int l, int phi, std::uint8_t v, double penalty) {
    writable_bits(m_, l)[phi & 1] = v;
    u_hist_[l][phi] = v;
    metric_[l] += penalty;
  }

  void extend_frozen(int phi) {
    for (int l = 0; l < L_; ++l) {
      if (!active_[l]) continue;
      const double llr = read_llr(m_, l)[0];
      set_bit(l, phi, 0, llr < 0.0 ? -llr : 0.0);
    }
  }

  void extend_decision(int phi) {
    struct Cand {
      double metric;
      int path;
      std::uint8_t bit;
    };
    std::vector<Cand> cands;
    cands.reserve(2 * L_);
    for (int l = 0; l < L_; ++l) {
      if (!active_[l]) continue;
      const double llr = read_llr(m_, l)[0];
      cands.push_back({metric_[l] + (llr < 0.0 ? -llr : 0.0), l, 0});
      cands.push_back({metric_[l] + (llr > 0.0 ? llr : 0.0), l, 1});
    }
    const int keep = std::min<int>(L_, (int)cands.size());
    std::stable_sort(cands.begin(), cands.end(),
                     [](const Cand& a, const Cand& b) { return a.metric < b.metric; });
    std::vector<std::uint8_t> keep0(L_, 0), keep1(L_, 0);
    for (int i = 0; i < keep; ++i)
      (cands[i].bit ? keep1 : keep0)[cands[i].path] = 1;
    std::vector<int> snapshot;
    for (int l = 0; l < L_; ++l)
      if (active_[l]) snapshot.push_back(l);
    for (int l : snapshot)
      if (!keep0[l] && !keep1[l]) kill_path(l);
    for (int l : snapshot) {
      if (!keep0[l] && !keep1[l]) continue;
      const double llr = read_llr(m_, l)[0];
      const double pen0 = llr < 0.0 ? -llr : 0.0;
      const double pen1 = llr > 0.0 ? llr : 0.0;
      if (keep0[l] && keep1[l]) {
        const int l2 = clone_path(l);
        set_bit(l, phi, 0, pen0);
        set_bit(l2, phi, 1, pen1);
      } else if (keep0[l]) {
        set_bit(l, phi, 0, pen0);
      } else {
        set_bit(l, phi, 1, pen1);
      }
    }
  }

  int n_, m_, L_;
  std::vector<std::uint8_t> mask_;
  std::vector<std::vector<double>> llr_;
  std::vector<std::vector<std::uint8_t>> bits_;
  std::vector<int> path_to_array_;
  std::vector<int> ref_count_;
  std::vector<std::vector<int>> inactive_arrays_;
  std::vector<int> inactive_paths_;
  std::vector<bool> active_;
  std::vector<double> metric_;
  std::vector<BitVec> u_hist_;
};

}  // namespace

std::vector<SclPath> scl_decode_list(const PolarCodeSpec& spec, const LlrVec& llrs,
                                     int list_size) {
  spec.validate();
  if ((int)llrs.size() != spec.n)
    throw std::invalid_argument("scl_decode: LLR length != N");
  if (list_size < 1) throw std::invalid_argument("scl_decode: list size must be >= 1");
  SclDecoder dec(spec, list_size);
  return dec.run(llrs);
}

SclResult scl_decode(const PolarCodeSpec& spec, const LlrVec& llrs, int list_size) {
  auto paths = scl_decode_list(spec, llrs, list_size);
  if (spec.crc.length > 0) {
    for (const auto& p : paths) {
      BitVec msg = extract_message(spec, p.u_hat);
      if (crc_check(msg, spec.crc)) return SclResult{p.u_hat, std::move(msg), true};
    }
  }
  const auto& best = paths.front();
  BitVec msg = extract_message(spec, best.u_hat);
  const bool ok = spec.crc.length == 0 || crc_check(msg, spec.crc);
  return SclResult{best.u_hat, std::move(msg), ok};
}

}  // namespace pfcm
