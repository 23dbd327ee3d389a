#include "pfcm/code_design.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace pfcm {

namespace {

// ---- Gauss-Hermite rules (weight e^{-x^2}; weights sum to sqrt(pi)) ----

struct GhRule {
  std::vector<double> x, w;
};

GhRule make_gauss_hermite(int n) {
  GhRule r;
  r.x.resize(n);
  r.w.resize(n);
  const int m = (n + 1) / 2;
  double z = 0.0, pp = 0.0;
  for (int i = 0; i < m; ++i) {
    if (i == 0)
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
    else if (i == 1)
      z -= 1.14 * std::pow((double)n, 0.426) / z;
    else if (i == 2)
      z = 1.86 * z - 0.86 * r.x[0];
    else if (i == 3)
      z = 1.91 * z - 0.91 * r.x[1];
    else
      z = 2.0 * z - r.x[i - 2];
    for (int it = 0; it < 200; ++it) {
      double p1 = 0.7511255444649425;  // pi^{-1/4}
      double p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double dz = p1 / pp;
      z -= dz;
      if (std::fabs(dz) < 1e-14) break;
    }
    r.x[i] = z;
    r.x[n - 1 - i] = -z;
    r.w[i] = 2.0 / (pp * pp);
    r.w[n - 1 - i] = r.w[i];
  }
  return r;
}

const GhRule& gh24() {
  static const GhRule r = make_gauss_hermite(24);
  return r;
}
const GhRule& gh48() {
  static const GhRule r = make_gauss_hermite(48);
  return r;
}

double softplus(double t) {
  if (t > 0.0) return t + std::log1p(std::exp(-t));
  return std::log1p(std::exp(t));
}

// 1 - I for the unit-amplitude BI-AWGN channel; increasing in the variance
// and well scaled near I -> 1.
double biawgn_deficiency(double sigma_k2) {
  const GhRule& gh = gh48();
  const double s = std::sqrt(2.0 * sigma_k2);
  double acc = 0.0;
  for (std::size_t i = 0; i < gh.x.size(); ++i)
    acc += gh.w[i] * softplus(-2.0 * (1.0 + s * gh.x[i]) / sigma_k2);
  return acc / (std::sqrt(M_PI) * M_LN2);
}

// Per-level deficiencies 1 - I(B_k; Y), all levels in one sweep.
std::vector<double> bicm_deficiencies(const Constellation& c, double sigma2) {
  if (sigma2 <= 0.0) throw std::invalid_argument("bicm_bit_mi: variance must be positive");
  const GhRule& gh = gh24();
  const int ns = c.bits_per_symbol, order = c.order;
  const double step = std::sqrt(sigma2);  // sqrt(2) * per-dimension sigma
  std::vector<double> d(ns, 0.0);
  std::vector<double> t(order), u(order);
  for (int xi = 0; xi < order; ++xi) {
    for (std::size_t a = 0; a < gh.x.size(); ++a) {
      for (std::size_t b = 0; b < gh.x.size(); ++b) {
        const cplx y = c.points[xi] + cplx(step * gh.x[a], step * gh.x[b]);
        double tmax = -std::numeric_limits<double>::infinity();
        for (int v = 0; v < order; ++v) {
          t[v] = -std::norm(y - c.points[v]) / sigma2;
          tmax = std::max(tmax, t[v]);
        }
        double sum_all = 0.0;
        for (int v = 0; v < order; ++v) sum_all += std::exp(t[v] - tmax);
        const double log_all = tmax + std::log(sum_all);
        const double wq = gh.w[a] * gh.w[b];
        for (int k = 0; k < ns; ++k) {
          const int bit = (xi >> k) & 1;
          double smax = -std::numeric_limits<double>::infinity();
          for (int v = 0; v < order; ++v)
            if (((v >> k) & 1) == bit) smax = std::max(smax, t[v]);
          double ssum = 0.0;
          for (int v = 0; v < order; ++v)
            if (((v >> k) & 1) == bit) ssum += std::exp(t[v] - smax);
          d[k] += wq * (log_all - (smax + std::log(ssum)));
        }
      }
    }
  }
  for (int k = 0; k < ns; ++k) d[k] /= M_PI * order * M_LN2;
  return d;
}

double q_func(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

double psi_branch_low(double mu) {
  return 1.0 - std::exp(-0.4527 * std::pow(mu, 0.86) + 0.0218);
}

// Continuity factor for the asymptotic branch so psi is monotone across the
// seam at mu = 10.
double psi_seam_scale() {
  const double phi_low = std::exp(-0.4527 * std::pow(10.0, 0.86) + 0.0218);
  const double phi_high =
      std::sqrt(M_PI / 10.0) * (1.0 - 10.0 / 70.0) * std::exp(-10.0 / 4.0);
  return phi_low / phi_high;
}

double psi_branch_high(double mu) {
  static const double scale = psi_seam_scale();
  return 1.0 - scale * std::sqrt(M_PI / mu) * (1.0 - 10.0 / (7.0 * mu)) *
                   std::exp(-mu / 4.0);
}

constexpr double kPsiInvHi = 1e6;

}  // namespace

double bicm_bit_mi(const Constellation& c, int k, double sigma2) {
  if (k < 0 || k >= c.bits_per_symbol) throw std::invalid_argument("bicm_bit_mi: bad level");
  const double d = bicm_deficiencies(c, sigma2)[k];
  return std::clamp(1.0 - d, 0.0, 1.0);
}

double biawgn_mi(double sigma_k2) {
  if (sigma_k2 <= 0.0) throw std::invalid_argument("biawgn_mi: variance must be positive");
  return std::clamp(1.0 - biawgn_deficiency(sigma_k2), 0.0, 1.0);
}

double match_equivalent_snr(double i_target) {
  if (!(i_target > 0.0 && i_target < 1.0))
    throw std::invalid_argument("match_equivalent_snr: target must be in (0,1)");
  const double d_target = 1.0 - i_target;
  double lo = std::log(1e-9), hi = std::log(1e9);
  if (biawgn_deficiency(std::exp(lo)) >= d_target) return std::exp(lo);
  if (biawgn_deficiency(std::exp(hi)) <= d_target) return std::exp(hi);
  // Bisect until the variance bracket is tight; the MI gap alone cannot
  // resolve the variance at high SNR where dI/dsigma2 is exponentially small.
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    const double mid = 0.5 * (lo + hi);
    (biawgn_deficiency(std::exp(mid)) < d_target ? lo : hi) = mid;
  }
  return std::exp(0.5 * (lo + hi));
}

BitLevelProfile build_bit_level_profile(int order, double sigma2) {
  const auto& c = Constellation::get(order);
  BitLevelProfile p;
  p.order = order;
  p.sigma2 = sigma2;
  const auto d = bicm_deficiencies(c, sigma2);
  p.sigma_k2.resize(c.bits_per_symbol);
  for (int k = 0; k < c.bits_per_symbol; ++k) {
    const double mi = std::clamp(1.0 - d[k], 1e-12, 1.0 - 1e-12);
    p.sigma_k2[k] = match_equivalent_snr(mi);
  }
  return p;
}

double psi(double mu) {
  if (!(mu >= 0.0)) throw std::invalid_argument("psi: mean must be >= 0");
  const double v = mu <= 10.0 ? psi_branch_low(mu) : psi_branch_high(mu);
  if (v <= 0.0) return 0.0;
  if (v >= 1.0) return std::nextafter(1.0, 0.0);
  return v;
}

double psi_inv(double v) {
  if (!(v >= 0.0 && v < 1.0)) throw std::invalid_argument("psi_inv: value must be in [0,1)");
  if (v <= 0.0) return 0.0;
  const double seam = psi(10.0);
  if (v <= seam) {
    // Closed-form inverse of the low branch.
    const double mu = std::pow((0.0218 - std::log1p(-v)) / 0.4527, 1.0 / 0.86);
    return mu > 0.0 ? mu : 0.0;
  }
  if (v >= psi(kPsiInvHi)) return kPsiInvHi;
  double lo = 10.0, hi = kPsiInvHi;
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    (psi(mid) < v ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

DegaProfile dega_evolve(int n, const std::vector<double>& initial_means) {
  const int levels = log2_exact(n);
  if (levels < 0) throw std::invalid_argument("dega_evolve: N must be a power of two");
  if ((int)initial_means.size() != n)
    throw std::invalid_argument("dega_evolve: initial means length != N");
  for (double m : initial_means)
    if (!(m >= 0.0)) throw std::invalid_argument("dega_evolve: negative initial mean");
  std::vector<double> cur(initial_means), nxt(n);
  for (int d = 0; d < levels; ++d) {
    const int span = n >> d;
    const int half = span >> 1;
    for (int base = 0; base < n; base += span) {
      for (int r = 0; r < half; ++r) {
        const double a = cur[base + r], b = cur[base + r + half];
        nxt[base + r] = psi_inv(psi(a) * psi(b));
        nxt[base + r + half] = a + b;
      }
    }
    std::swap(cur, nxt);
  }
  return DegaProfile{std::move(cur)};
}

std::vector<double> pilot_initial_means(double sigma2, const RateMatchSpec& rm) {
  const double mu = 2.0 / std::max(sigma2, 1e-12);
  return de_rate_match(LlrVec(rm.coded_len, mu), rm, 2.0 * kLlrMax);
}

std::vector<double> component0_initial_means(int ns0, const std::vector<int>& data_symbols,
                                             const std::vector<BitLevelProfile>& block_profiles,
                                             const BicmInterleaver& pi,
                                             const RateMatchSpec& rm) {
  const int ns = log2_exact(ns0);
  const int m0 = ns * std::accumulate(data_symbols.begin(), data_symbols.end(), 0);
  if (rm.coded_len != m0 || pi.size() != m0)
    throw std::invalid_argument("component0_initial_means: layout mismatch");
  if (block_profiles.size() != data_symbols.size())
    throw std::invalid_argument("component0_initial_means: profile per block required");
  LlrVec rm_means(m0);
  int slot = 0;
  for (std::size_t b = 0; b < data_symbols.size(); ++b) {
    for (int s = 0; s < data_symbols[b]; ++s) {
      for (int k = 0; k < ns; ++k, ++slot)
        rm_means[pi.perm[slot]] = 2.0 / block_profiles[b].sigma_k2[k];
    }
  }
  return de_rate_match(rm_means, rm, 2.0 * kLlrMax);
}

PolarCodeSpec construct_code(int n, int k, const DegaProfile& profile, bool monitor,
                             const std::vector<int>& forced_frozen, const CrcSpec& crc) {
  if ((int)profile.mean.size() != n)
    throw std::invalid_argument("construct_code: profile length != N");
  std::vector<std::uint8_t> excluded(n, 0);
  for (int i : forced_frozen) excluded.at(i) = 1;
  if (monitor) {
    excluded[n - 2] = 1;
    excluded[n - 1] = 1;
  }
  std::vector<int> cand;
  for (int i = 0; i < n; ++i)
    if (!excluded[i]) cand.push_back(i);
  if (k > (int)cand.size())
    throw std::invalid_argument("construct_code: not enough usable positions");
  std::sort(cand.begin(), cand.end(), [&](int a, int b) {
    if (profile.mean[a] != profile.mean[b]) return profile.mean[a] > profile.mean[b];
    return a > b;
  });
  PolarCodeSpec spec;
  spec.n = n;
  spec.monitor = monitor;
  spec.crc = crc;
  spec.info_set.assign(cand.begin(), cand.begin() + k);
  std::sort(spec.info_set.begin(), spec.info_set.end());
  spec.validate();
  return spec;
}

double dega_block_error(const PolarCodeSpec& spec, const DegaProfile& profile) {
  if ((int)profile.mean.size() != spec.n)
    throw std::invalid_argument("dega_block_error: profile length != N");
  double log_ok = 0.0;
  auto add = [&](int i) { log_ok += std::log1p(-q_func(std::sqrt(profile.mean[i] / 2.0))); };
  for (int i : spec.info_set) add(i);
  if (spec.monitor) {
    add(spec.n - 2);
    add(spec.n - 1);
  }
  return -std::expm1(log_ok);
}

double overall_error(std::span<const double> per_component) {
  double ok = 1.0;
  for (double p : per_component) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("overall_error: p outside [0,1]");
    ok *= 1.0 - p;
  }
  return 1.0 - ok;
}

int mother_for(int coded_len) {
  if (coded_len < 2) throw std::invalid_argument("mother_for: coded length too small");
  int n = 2;
  while (n < coded_len) n <<= 1;
  return n;
}

// ---- split optimization -----------------------------------------------------

std::vector<int> DesignRequest::data_symbols() const {
  std::vector<int> out(blocks);
  for (int b = 0; b < blocks; ++b) out[b] = n_t / blocks - nc_pilot[b];
  return out;
}

void DesignRequest::validate() const {
  if (blocks < 1 || (int)nc_pilot.size() != blocks)
    throw std::invalid_argument("design: pilot budgets must have B entries");
  if (n_t < 1 || n_t % blocks != 0)
    throw std::invalid_argument("design: N_t must be a positive multiple of B");
  if (ns0 != 4 && ns0 != 16 && ns0 != 64)
    throw std::invalid_argument("design: unsupported modulation order");
  if (k < 1) throw std::invalid_argument("design: K >= 1 required");
  int data = 0;
  for (int b = 0; b < blocks; ++b) {
    if (nc_pilot[b] < 4) throw std::invalid_argument("design: coded pilot needs >= 4 symbols");
    if (n_t / blocks - nc_pilot[b] < 0)
      throw std::invalid_argument("design: pilot exceeds block budget");
    data += n_t / blocks - nc_pilot[b];
  }
  if (data < 1) throw std::invalid_argument("design: no data symbols left");
  if (!(snr_step_db > 0) || snr_max_db < snr_min_db)
    throw std::invalid_argument("design: bad SNR grid");
  if (min_pilot_info < 1) throw std::invalid_argument("design: min pilot info >= 1");
}

namespace {

struct ComponentEval {
  RateMatchSpec rm;
  DegaProfile profile;
  std::vector<int> order;      // usable indices, best first
  std::vector<double> prefix;  // prefix sums of log(1 - Q)
  double monitor_log = 0.0;

  int usable() const { return (int)order.size(); }
  double log_ok(int kk) const { return prefix[kk] + monitor_log; }
};

ComponentEval finish_eval(RateMatchSpec rm, DegaProfile prof, bool monitor,
                          const std::vector<int>& forced) {
  ComponentEval ev;
  ev.rm = rm;
  std::vector<std::uint8_t> excluded(rm.mother_n, 0);
  for (int i : forced) excluded[i] = 1;
  if (monitor) {
    excluded[rm.mother_n - 2] = 1;
    excluded[rm.mother_n - 1] = 1;
    ev.monitor_log = std::log1p(-q_func(std::sqrt(prof.mean[rm.mother_n - 2] / 2.0))) +
                     std::log1p(-q_func(std::sqrt(prof.mean[rm.mother_n - 1] / 2.0)));
  }
  for (int i = 0; i < rm.mother_n; ++i)
    if (!excluded[i]) ev.order.push_back(i);
  std::sort(ev.order.begin(), ev.order.end(), [&](int a, int b) {
    if (prof.mean[a] != prof.mean[b]) return prof.mean[a] > prof.mean[b];
    return a > b;
  });
  ev.prefix.resize(ev.order.size() + 1, 0.0);
  for (std::size_t j = 0; j < ev.order.size(); ++j)
    ev.prefix[j + 1] =
        ev.prefix[j] + std::log1p(-q_func(std::sqrt(prof.mean[ev.order[j]] / 2.0)));
  ev.profile = std::move(prof);
  return ev;
}

ComponentEval eval_pilot(int nc, double sigma2) {
  const int m = 2 * nc;
  const int n = mother_for(m);
  RateMatchSpec rm{n, m, select_mode(0.0, n, m, true), SubblockPattern::direct};
  return finish_eval(rm, dega_evolve(n, pilot_initial_means(sigma2, rm)), true, {});
}

ComponentEval eval_data(const DesignRequest& req, const std::vector<BitLevelProfile>& profs,
                        const BicmInterleaver& pi, RateMatchMode mode) {
  const auto data = req.data_symbols();
  const int m0 = log2_exact(req.ns0) * std::accumulate(data.begin(), data.end(), 0);
  const int n0 = mother_for(m0);
  RateMatchSpec rm{n0, m0, mode, SubblockPattern::standard};
  auto init = component0_initial_means(req.ns0, data, profs, pi, rm);
  return finish_eval(rm, dega_evolve(n0, init), false, forced_frozen_set(rm));
}

struct SnrEval {
  bool dual_mode = false;  // both puncture and shorten reachable
  ComponentEval data_puncture, data_shorten;
  std::vector<ComponentEval> pilots;  // per block
  int budget = 0;
  int crc0 = 0, crc_pilot = 0;
  int m0 = 0;

  const ComponentEval& data_for(int k0) const {
    if (!dual_mode) return data_puncture;
    return ((double)k0 / m0 < 0.55) ? data_puncture : data_shorten;
  }
};

SnrEval build_snr_eval(const DesignRequest& req, double snr_db) {
  const double sigma2 = snr_db_to_sigma2(snr_db);
  SnrEval ev;
  ev.crc0 = 11;  // the aggregate CRC also rides in component 0's segment
  ev.crc_pilot = req.crc_policy == CrcPolicy::per_component ? 11 : 0;
  ev.budget = req.k + ev.crc0 + ev.crc_pilot * req.blocks;
  const auto data = req.data_symbols();
  ev.m0 = log2_exact(req.ns0) * std::accumulate(data.begin(), data.end(), 0);
  const int n0 = mother_for(ev.m0);

  std::vector<BitLevelProfile> profs(req.blocks);
  for (int b = 0; b < req.blocks; ++b) {
    const double sig_eff = sigma2 + sigma2 / req.nc_pilot[b];
    if (b > 0 && req.nc_pilot[b] == req.nc_pilot[b - 1])
      profs[b] = profs[b - 1];
    else
      profs[b] = build_bit_level_profile(req.ns0, sig_eff);
  }
  const auto pi = BicmInterleaver::seeded(ev.m0, req.bicm_seed);
  if (ev.m0 == n0) {
    ev.dual_mode = false;
    ev.data_puncture = eval_data(req, profs, pi, RateMatchMode::none);
  } else if (ev.m0 > n0) {
    ev.dual_mode = false;
    ev.data_puncture = eval_data(req, profs, pi, RateMatchMode::repeat);
  } else {
    ev.dual_mode = true;
    ev.data_puncture = eval_data(req, profs, pi, RateMatchMode::puncture);
    ev.data_shorten = eval_data(req, profs, pi, RateMatchMode::shorten);
  }
  ev.pilots.resize(req.blocks);
  for (int b = 0; b < req.blocks; ++b) {
    if (b > 0 && req.nc_pilot[b] == req.nc_pilot[b - 1])
      ev.pilots[b] = ev.pilots[b - 1];
    else
      ev.pilots[b] = eval_pilot(req.nc_pilot[b], sigma2);
  }
  return ev;
}

// Enumerates pilot allocations (ascending, hence lexicographically smallest
// wins ties) and derives component 0 from the budget.
double enumerate_best(const DesignRequest& req, const SnrEval& ev, SplitAllocation* best) {
  const int B = req.blocks;
  std::vector<int> lo(B), hi(B);
  for (int b = 0; b < B; ++b) {
    lo[b] = ev.crc_pilot + req.min_pilot_info;
    hi[b] = ev.pilots[b].usable();
    if (req.max_pilot_info > 0) hi[b] = std::min(hi[b], ev.crc_pilot + req.max_pilot_info);
    if (hi[b] < lo[b]) return std::numeric_limits<double>::infinity();
  }
  double best_p = std::numeric_limits<double>::infinity();
  std::vector<int> cur(B);
  std::vector<int> found;
  std::vector<double> pilot_logs(B + 1, 0.0);
  // recursive enumeration over pilot components
  std::function<void(int, int)> rec = [&](int b, int used) {
    if (b == B) {
      const int k0 = ev.budget - used;
      if (k0 < ev.crc0 + 1) return;
      const ComponentEval& d = ev.data_for(k0);
      if (k0 > d.usable()) return;
      const double log_ok = d.log_ok(k0) + pilot_logs[B];
      const double p = -std::expm1(log_ok);
      if (p < best_p) {
        best_p = p;
        found = cur;
      }
      return;
    }
    for (int kb = lo[b]; kb <= hi[b]; ++kb) {
      cur[b] = kb;
      pilot_logs[b + 1] = pilot_logs[b] + ev.pilots[b].log_ok(kb);
      rec(b + 1, used + kb);
    }
  };
  rec(0, 0);
  if (best != nullptr && !found.empty()) {
    best->info_sizes.assign(B + 1, 0);
    int used = 0;
    for (int b = 0; b < B; ++b) {
      best->info_sizes[b + 1] = found[b];
      used += found[b];
    }
    best->info_sizes[0] = ev.budget - used;
  }
  return best_p;
}

std::vector<ComponentCode> build_components(const DesignRequest& req, const SnrEval& ev,
                                            const SplitAllocation& alloc,
                                            std::vector<double>* comp_bler) {
  const CrcSpec crc0 = ev.crc0 > 0 && req.crc_policy == CrcPolicy::per_component
                           ? CrcSpec::crc11()
                           : CrcSpec::none();
  const CrcSpec crcb =
      req.crc_policy == CrcPolicy::per_component ? CrcSpec::crc11() : CrcSpec::none();
  std::vector<ComponentCode> comps(req.blocks + 1);
  if (comp_bler) comp_bler->assign(req.blocks + 1, 0.0);
  const int k0 = alloc.info_sizes[0];
  const ComponentEval& d = ev.data_for(k0);
  ComponentCode c0;
  c0.code = construct_code(d.rm.mother_n, k0, d.profile, false, forced_frozen_set(d.rm), crc0);
  c0.rm = d.rm;
  c0.k_info = k0 - 11;  // message bits after either CRC flavor
  comps[0] = std::move(c0);
  if (comp_bler) (*comp_bler)[0] = dega_block_error(comps[0].code, d.profile);
  for (int b = 1; b <= req.blocks; ++b) {
    const ComponentEval& pe = ev.pilots[b - 1];
    ComponentCode cb;
    cb.code = construct_code(pe.rm.mother_n, alloc.info_sizes[b], pe.profile, true, {}, crcb);
    cb.rm = pe.rm;
    cb.k_info = req.crc_policy == CrcPolicy::per_component ? alloc.info_sizes[b] - 11
                                                           : alloc.info_sizes[b];
    comps[b] = std::move(cb);
    if (comp_bler) (*comp_bler)[b] = dega_block_error(comps[b].code, pe.profile);
  }
  return comps;
}

}  // namespace

double evaluate_min_bler(const DesignRequest& req, double snr_db, SplitAllocation* best) {
  req.validate();
  const SnrEval ev = build_snr_eval(req, snr_db);
  return enumerate_best(req, ev, best);
}

SplitDesign optimize_split(const DesignRequest& req) {
  req.validate();
  SplitDesign out;
  double best_ever = std::numeric_limits<double>::infinity();
  double best_snr = req.snr_min_db;
  SplitAllocation best_alloc;
  for (double snr = req.snr_min_db; snr <= req.snr_max_db + 1e-9; snr += req.snr_step_db) {
    SplitAllocation alloc;
    const SnrEval ev = build_snr_eval(req, snr);
    const double p = enumerate_best(req, ev, &alloc);
    if (p < best_ever) {
      best_ever = p;
      best_snr = snr;
      best_alloc = alloc;
    }
    if (p <= req.target_bler) {
      out.design_snr_db = snr;
      out.met_target = true;
      out.predicted_bler = p;
      out.alloc = alloc;
      out.comp = build_components(req, ev, alloc, &out.predicted_component_bler);
      return out;
    }
  }
  if (!std::isfinite(best_ever))
    throw std::invalid_argument("optimize_split: no feasible allocation on the SNR grid");
  out.design_snr_db = best_snr;
  out.met_target = false;
  out.predicted_bler = best_ever;
  out.alloc = best_alloc;
  const SnrEval ev = build_snr_eval(req, best_snr);
  out.comp = build_components(req, ev, best_alloc, &out.predicted_component_bler);
  return out;
}

double split_predicted_bler(const SplitConfig& cfg, double snr_db) {
  cfg.validate();
  const double sigma2 = snr_db_to_sigma2(snr_db);
  std::vector<double> per_comp(cfg.blocks + 1, 0.0);
  std::vector<BitLevelProfile> profs(cfg.blocks);
  for (int b = 0; b < cfg.blocks; ++b) {
    const double sig_eff = sigma2 + sigma2 / cfg.nc_pilot[b];
    if (b > 0 && cfg.nc_pilot[b] == cfg.nc_pilot[b - 1])
      profs[b] = profs[b - 1];
    else
      profs[b] = build_bit_level_profile(cfg.ns0, sig_eff);
  }
  const auto pi = BicmInterleaver::seeded(cfg.coded_len0(), cfg.bicm_seed);
  const auto init0 =
      component0_initial_means(cfg.ns0, cfg.data_symbols, profs, pi, cfg.comp[0].rm);
  per_comp[0] = dega_block_error(cfg.comp[0].code,
                                 dega_evolve(cfg.comp[0].rm.mother_n, init0));
  for (int b = 1; b <= cfg.blocks; ++b) {
    const auto& rm = cfg.comp[b].rm;
    if (b > 1 && cfg.nc_pilot[b - 1] == cfg.nc_pilot[b - 2] &&
        cfg.comp[b].code.info_set == cfg.comp[b - 1].code.info_set) {
      per_comp[b] = per_comp[b - 1];
      continue;
    }
    per_comp[b] = dega_block_error(
        cfg.comp[b].code, dega_evolve(rm.mother_n, pilot_initial_means(sigma2, rm)));
  }
  return overall_error(per_comp);
}

SplitConfig make_split_config(const DesignRequest& req, const SplitDesign& design) {
  SplitConfig cfg;
  cfg.n_t = req.n_t;
  cfg.blocks = req.blocks;
  cfg.ns0 = req.ns0;
  cfg.nc_pilot = req.nc_pilot;
  cfg.data_symbols = req.data_symbols();
  cfg.crc_policy = req.crc_policy;
  cfg.bicm_seed = req.bicm_seed;
  cfg.comp = design.comp;
  cfg.validate();
  return cfg;
}

// ---- pilot-aided baseline design -------------------------------------------

std::vector<int> PilotAidedRequest::data_symbols() const {
  std::vector<int> out(blocks);
  for (int b = 0; b < blocks; ++b) out[b] = n_t / blocks - np[b];
  return out;
}

void PilotAidedRequest::validate() const {
  if (blocks < 1 || (int)np.size() != blocks)
    throw std::invalid_argument("pilot design: pilot lengths must have B entries");
  if (n_t < 1 || n_t % blocks != 0)
    throw std::invalid_argument("pilot design: N_t must be a positive multiple of B");
  if (ns != 4 && ns != 16 && ns != 64)
    throw std::invalid_argument("pilot design: unsupported modulation order");
  if (k < 1) throw std::invalid_argument("pilot design: K >= 1 required");
  for (int b = 0; b < blocks; ++b)
    if (np[b] < 1 || np[b] >= n_t / blocks)
      throw std::invalid_argument("pilot design: pilot length outside block");
}

namespace {

struct PilotAidedEval {
  ComponentCode comp;
  DegaProfile profile;
};

PilotAidedEval build_pilot_aided(const PilotAidedRequest& req, double snr_db) {
  req.validate();
  const double sigma2 = snr_db_to_sigma2(snr_db);
  const auto data = req.data_symbols();
  const int m = log2_exact(req.ns) * std::accumulate(data.begin(), data.end(), 0);
  const int n = mother_for(m);
  const int info = req.k + 11;
  RateMatchMode mode = select_mode((double)info / m, n, m, false);
  RateMatchSpec rm{n, m, mode, SubblockPattern::standard};
  std::vector<BitLevelProfile> profs(req.blocks);
  for (int b = 0; b < req.blocks; ++b) {
    const double sig_eff = sigma2 + sigma2 / req.np[b];
    if (b > 0 && req.np[b] == req.np[b - 1])
      profs[b] = profs[b - 1];
    else
      profs[b] = build_bit_level_profile(req.ns, sig_eff);
  }
  const auto pi = BicmInterleaver::seeded(m, req.bicm_seed);
  auto init = component0_initial_means(req.ns, data, profs, pi, rm);
  DegaProfile prof = dega_evolve(n, init);
  ComponentCode comp;
  comp.code = construct_code(n, info, prof, false, forced_frozen_set(rm), CrcSpec::crc11());
  comp.rm = rm;
  comp.k_info = req.k;
  return PilotAidedEval{std::move(comp), std::move(prof)};
}

}  // namespace

PilotAidedConfig make_pilot_aided_config(const PilotAidedRequest& req, double snr_db) {
  auto ev = build_pilot_aided(req, snr_db);
  PilotAidedConfig cfg;
  cfg.n_t = req.n_t;
  cfg.blocks = req.blocks;
  cfg.ns = req.ns;
  cfg.np = req.np;
  cfg.data_symbols = req.data_symbols();
  cfg.data = std::move(ev.comp);
  cfg.pilot_seed = req.pilot_seed;
  cfg.bicm_seed = req.bicm_seed;
  cfg.validate();
  return cfg;
}

double pilot_aided_predicted_bler(const PilotAidedRequest& req, double snr_db) {
  auto ev = build_pilot_aided(req, snr_db);
  return dega_block_error(ev.comp.code, ev.profile);
}

}  // namespace pfcm
