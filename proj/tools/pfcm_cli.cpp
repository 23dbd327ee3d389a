#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "pfcm/sim.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

// "a:b:c" range or comma list.
std::vector<double> parse_snr_list(const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    double lo, step, hi;
    char c1, c2;
    std::istringstream is(text);
    if (!(is >> lo >> c1 >> step >> c2 >> hi) || c1 != ':' || c2 != ':')
      throw std::runtime_error("bad --snr range, expected lo:step:hi");
    for (double s = lo; s <= hi + 1e-9; s += step) out.push_back(s);
    return out;
  }
  std::istringstream is(text);
  std::string tok;
  while (std::getline(is, tok, ',')) out.push_back(std::stod(tok));
  return out;
}

int run_selftest() {
  using namespace pfcm;
  int failures = 0;
  auto check = [&](bool ok, const char* name) {
    std::cout << (ok ? "PASS " : "FAIL ") << name << '\n';
    if (!ok) ++failures;
  };

  {
    Rng rng(7, 0, 0);
    BitVec u = random_bits(64, rng);
    check(polar_transform(polar_transform(u)) == u, "polar transform involution");
  }
  {
    Rng rng(7, 1, 0);
    BitVec m = random_bits(40, rng);
    check(crc_check(crc_attach(m, CrcSpec::crc11()), CrcSpec::crc11()), "crc roundtrip");
  }
  {
    auto pi = BicmInterleaver::seeded(96);
    Rng rng(7, 2, 0);
    BitVec b = random_bits(96, rng);
    check(bicm_deinterleave(bicm_interleave(b, pi), pi) == b, "bicm interleaver inverse");
  }
  {
    bool ok = true;
    for (double x : {0.2, 1.0, 4.0, 12.0, 60.0})
      ok = ok && std::fabs(psi_inv(psi(x)) - x) < 1e-6 * std::max(1.0, x);
    check(ok, "psi inverse roundtrip");
  }
  {
    DesignRequest req;
    req.n_t = 120;
    req.blocks = 1;
    req.ns0 = 4;
    req.nc_pilot = {8};
    req.k = 60;
    req.target_bler = 1e-2;
    const SplitDesign d = optimize_split(req);
    const SplitConfig cfg = make_split_config(req, d);
    check(std::fabs(effective_rate(cfg) - (double)cfg.total_k() / cfg.n_t) < 1e-12,
          "effective rate identity");
    Rng rng(7, 3, 0);
    const BitVec msg = random_bits(cfg.total_k(), rng);
    const auto x = encode_packet(msg, cfg);
    Rng ch(7, 3, 1);
    auto real = sample_channel(cfg.block_symbol_counts(), 0.0, FadingModel::unit_phase, ch);
    Rng nz(7, 3, 2);
    const auto y = transmit(x, real, nz);
    HybridOptions opt;
    opt.list_size = 4;
    const auto res = hybrid_decode(y, cfg, 0.0, opt);
    check(res.message == msg && !res.detected_error, "noiseless split roundtrip");
  }
  std::cout << (failures == 0 ? "selftest OK\n" : "selftest FAILED\n");
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pilot-free polar-coded modulation link simulator"};
  app.require_subcommand(1);

  std::string config_path, out_path, snr_text, figure, scale_text = "desk";
  std::uint64_t seed = 0;
  bool seed_set = false;
  int threads = 0, list_size = 0;
  double target_bler = 0.0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "campaign config JSON");
    cmd->add_option("--out", out_path, "output path");
    cmd->add_option("--seed", seed, "override RNG seed")->each([&](const std::string&) {
      seed_set = true;
    });
    cmd->add_option("--threads", threads, "worker threads (0 = all cores)");
    cmd->add_option("--list-size", list_size, "override SCL list size");
    cmd->add_option("--target-bler", target_bler, "override target block error rate");
    cmd->add_option("--snr", snr_text, "SNR points, comma list or lo:step:hi");
  };

  auto* design_cmd = app.add_subcommand("design", "optimize the split and write a design report");
  add_common(design_cmd);
  auto* run_cmd = app.add_subcommand("run", "run a Monte Carlo BLER campaign");
  add_common(run_cmd);
  auto* repro_cmd = app.add_subcommand("reproduce", "run a bundled experiment recipe");
  repro_cmd->add_option("figure", figure, "fig3 | fig5 | fig6")->required();
  repro_cmd->add_option("--scale", scale_text, "desk (default) or full");
  add_common(repro_cmd);
  auto* selftest_cmd = app.add_subcommand("selftest", "quick property checks");
  (void)selftest_cmd;

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("selftest")) return run_selftest();

    if (app.got_subcommand("reproduce")) {
      const auto scale =
          scale_text == "full" ? pfcm::FigureScale::full : pfcm::FigureScale::desk;
      const std::string dir = out_path.empty() ? "." : out_path;
      const auto files =
          pfcm::reproduce_figure(figure, scale, dir, threads, seed_set ? seed : 1);
      for (const auto& f : files) std::cout << "wrote " << f << '\n';
      return 0;
    }

    if (config_path.empty()) throw std::runtime_error("--config is required");
    pfcm::CampaignConfig cfg = pfcm::parse_campaign_config(read_file(config_path));
    if (seed_set) cfg.seed = seed;
    if (threads > 0) cfg.threads = threads;
    if (list_size > 0) cfg.list_size = list_size;
    if (target_bler > 0) cfg.target_bler = target_bler;
    if (!snr_text.empty()) cfg.snr_db = parse_snr_list(snr_text);
    if (!out_path.empty()) cfg.out = out_path;

    if (app.got_subcommand("design")) {
      if (cfg.nc_pilot.empty())
        throw std::runtime_error("design: config must set nc_pilot");
      pfcm::DesignRequest req;
      req.n_t = cfg.n_t();
      req.blocks = cfg.blocks;
      req.ns0 = cfg.ns;
      req.nc_pilot = cfg.nc_pilot;
      req.k = cfg.k;
      req.crc_policy = cfg.crc_policy;
      req.target_bler = cfg.target_bler;
      req.snr_min_db = cfg.design_snr_min_db;
      req.snr_max_db = cfg.design_snr_max_db;
      req.snr_step_db = cfg.design_snr_step_db;
      req.bicm_seed = cfg.bicm_seed;
      const auto design = pfcm::optimize_split(req);
      const std::string report = pfcm::design_report_json(req, design);
      if (cfg.out.empty()) {
        std::cout << report;
      } else {
        std::ofstream f(cfg.out, std::ios::binary);
        f << report;
        std::cout << "wrote " << cfg.out << '\n';
      }
      return 0;
    }

    // run
    pfcm::ResolvedDesigns rd;
    const auto curve = pfcm::run_campaign(cfg, &rd);
    if (cfg.out.empty())
      std::cout << curve.to_csv();
    else
      std::cout << "wrote " << cfg.out << '\n';
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
