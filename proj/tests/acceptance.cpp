// Acceptance suite: end-to-end checks of the toolkit at desk scale.
// Prints one [PASS]/[FAIL] line per criterion; the exit code is the number
// of failed criteria. Run with "--only N" to run a single criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "pnc/bounds.hpp"
#include "pnc/channel.hpp"
#include "pnc/constellation.hpp"
#include "pnc/montecarlo.hpp"
#include "pnc/rng.hpp"
#include "pnc/selection.hpp"
#include "support/oracles.hpp"

using pnc::Constellation;
using pnc::cplx;
using pnc::PncMap;
using pnc::Scheme;
using pnc::SerEstimate;
using pnc::SimConfig;

namespace {

// ---- shared sweeps ---------------------------------------------------------

struct SweepSpec {
  const char* name;
  int m_order;
  int n_a, n_b;
  Scheme scheme;
  double start, step, stop;
  long long frames;
  long long max_errors;
  std::uint64_t seed;
};

std::map<std::string, std::vector<SerEstimate>> g_sweeps;

const std::vector<SerEstimate>& get_sweep(const SweepSpec& spec) {
  auto it = g_sweeps.find(spec.name);
  if (it != g_sweeps.end()) return it->second;
  SimConfig cfg;
  cfg.m_order = spec.m_order;
  cfg.n_a = spec.n_a;
  cfg.n_b = spec.n_b;
  cfg.scheme = spec.scheme;
  cfg.frames = spec.frames;
  cfg.symbols_per_frame = 100;
  cfg.seed = spec.seed;
  cfg.max_errors = spec.max_errors;
  cfg.workers = 0;
  for (double db = spec.start; db <= spec.stop + 1e-9; db += spec.step)
    cfg.snr_grid_db.push_back(db);
  std::cerr << "  [sweep " << spec.name << "] ";
  std::vector<SerEstimate> rows;
  const auto t0 = std::chrono::steady_clock::now();
  for (double db : cfg.snr_grid_db) {
    rows.push_back(pnc::run_point(cfg, db));
    std::cerr << db << "dB:" << rows.back().errors << "e/" << rows.back().trials
              << "t " << std::flush;
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cerr << "(" << secs << " s)\n";
  return g_sweeps.emplace(spec.name, std::move(rows)).first->second;
}

const SweepSpec kTas1Q22{"qpsk_tas1_2x2", 4, 2, 2, Scheme::Tas1, 10, 5, 35, 300'000, 3'000, 101};
const SweepSpec kTas1Q33{"qpsk_tas1_3x3", 4, 3, 3, Scheme::Tas1, 10, 5, 35, 300'000, 3'000, 102};
const SweepSpec kTas1Q32{"qpsk_tas1_3x2", 4, 3, 2, Scheme::Tas1, 10, 5, 35, 300'000, 3'000, 103};
const SweepSpec kTas2Q22{"qpsk_tas2_2x2", 4, 2, 2, Scheme::Tas2, 15, 5, 30, 300'000, 3'000, 104};
const SweepSpec kTas2Q32{"qpsk_tas2_3x2", 4, 3, 2, Scheme::Tas2, 15, 5, 25, 300'000, 3'000, 105};
const SweepSpec kTas2Q33{"qpsk_tas2_3x3", 4, 3, 3, Scheme::Tas2, 14, 2, 20, 300'000, 3'000, 106};
const SweepSpec kTas1B22{"bpsk_tas1_2x2", 2, 2, 2, Scheme::Tas1, 8, 3, 20, 400'000, 3'000, 107};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

// ---- criteria ----------------------------------------------------------------

bool c1_exclusive_law(std::string& detail) {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  for (int m : {2, 4, 8}) ok = ok && pnc::verify_exclusive_law(PncMap::xor_map(m));

  const auto cl = pnc::clusters(PncMap::xor_map(4));
  using P = std::pair<int, int>;
  ok = ok && cl[0] == std::vector<P>{{0, 0}, {1, 1}, {2, 2}, {3, 3}};
  ok = ok && cl[1] == std::vector<P>{{0, 1}, {1, 0}, {2, 3}, {3, 2}};
  ok = ok && cl[2] == std::vector<P>{{0, 2}, {1, 3}, {2, 0}, {3, 1}};
  ok = ok && cl[3] == std::vector<P>{{0, 3}, {1, 2}, {2, 1}, {3, 0}};
  for (int m : {2, 8}) {
    const auto clm = pnc::clusters(PncMap::xor_map(m));
    ok = ok && static_cast<int>(clm.size()) == m;
    for (const auto& cluster : clm) ok = ok && static_cast<int>(cluster.size()) == m;
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  ok = ok && secs < 1.0;
  detail = "XOR map bijective for M=2,4,8; QPSK cluster rows exact; " + fmt(secs) + " s";
  return ok;
}

bool c2_selection_fixture(std::string& detail) {
  const double s = std::numbers::sqrt2 / 2.0;
  pnc::ChannelRealization ch;
  ch.coeffs_a.resize(2);
  ch.coeffs_b.resize(2);
  ch.coeffs_a[0] = cplx(s, s);
  ch.coeffs_a[1] = cplx(s, -0.5 * s);
  ch.coeffs_b[0] = cplx(s, -0.8 * s);
  ch.coeffs_b[1] = cplx(s, 0.7 * s);
  const pnc::DiffPairTable table(Constellation::psk(4), PncMap::xor_map(4));
  const pnc::AntennaChoice t1 = pnc::tas1_select(ch);
  const pnc::AntennaChoice t2 = pnc::tas2_select(ch, table);
  const double d1 = table.min_distance(t1.h_a, t1.h_b);
  const double d2 = table.min_distance(t2.h_a, t2.h_b);
  const bool ok = t1.idx_a == 0 && t1.idx_b == 0 && t2.idx_a == 0 && t2.idx_b == 1 &&
                  d2 > d1;
  detail = "TAS1 picks (1,1) d=" + fmt(d1) + ", TAS2 picks (1,2) d=" + fmt(d2);
  return ok;
}

bool c3_bound_tightness(std::string& detail) {
  const Constellation c = Constellation::psk(4);
  const PncMap m = PncMap::xor_map(4);
  bool ok = true;
  double worst_ratio = 0.0;
  for (const SweepSpec* spec : {&kTas1Q22, &kTas1Q33}) {
    const auto& rows = get_sweep(*spec);
    for (const SerEstimate& r : rows) {
      const double bound =
          pnc::tas1_ser_bound(std::pow(10.0, r.snr_db / 10.0), spec->n_a, spec->n_b, c, m);
      const auto ci99 = pnc::wilson_interval(r.errors, r.trials, pnc::kZ99);
      const double half99 = 0.5 * (ci99.high - ci99.low);
      if (r.ser > bound + half99) ok = false;
      if (r.ser >= 1e-4 && r.ser <= 1e-2) {
        const double ratio = bound / r.ser;
        worst_ratio = std::max(worst_ratio, ratio);
        if (ratio > 3.0) ok = false;
      }
    }
  }
  detail = "MC <= bound + 99% halfwidth everywhere; worst bound/MC ratio " +
           fmt(worst_ratio) + " (limit 3)";
  return ok;
}

bool c4_tas1_diversity_collapse(std::string& detail) {
  bool ok = true;
  detail = "fitted slopes:";
  for (const SweepSpec* spec : {&kTas1Q22, &kTas1Q32, &kTas1Q33}) {
    const double slope = pnc::fit_diversity_slope(get_sweep(*spec), 100, 1e-2);
    detail += std::string(" ") + spec->name + "=" + fmt(slope);
    if (slope < 0.8 || slope > 1.25) ok = false;
  }
  detail += " (window [0.8, 1.25])";
  return ok;
}

bool c5_bpsk_diversity(std::string& detail) {
  const double slope = pnc::fit_diversity_slope(get_sweep(kTas1B22), 100, 1e-2);
  detail = "fitted slope " + fmt(slope) + " (window [1.7, 2.4])";
  return slope >= 1.7 && slope <= 2.4;
}

bool c6_tas2_diversity(std::string& detail) {
  bool ok = true;
  const double s22 = pnc::fit_diversity_slope(get_sweep(kTas2Q22), 100, 1e-2);
  const double s32 = pnc::fit_diversity_slope(get_sweep(kTas2Q32), 100, 1e-2);
  const double s33 = pnc::fit_diversity_slope(get_sweep(kTas2Q33), 100, 1e-2);
  if (s22 < 1.7 || s32 < 1.7 || s33 < 2.5) ok = false;
  detail = "fitted slopes 2x2=" + fmt(s22) + " (>=1.7), 3x2=" + fmt(s32) +
           " (>=1.7), 3x3=" + fmt(s33) + " (>=2.5)";
  return ok;
}

bool c7_scheme_ordering(std::string& detail) {
  const auto& t1 = get_sweep(kTas1Q22);
  const auto& t2 = get_sweep(kTas2Q22);
  bool ok = true;
  int compared = 0;
  for (const SerEstimate& a : t1) {
    if (a.snr_db < 15.0 || a.errors < 100) continue;
    for (const SerEstimate& b : t2) {
      if (b.snr_db != a.snr_db || b.errors < 100) continue;
      ++compared;
      if (!(b.ser < a.ser && b.ci_high < a.ci_low)) ok = false;
    }
  }
  if (compared == 0) ok = false;
  detail = "TAS2 below TAS1 with disjoint 95% CIs at " + std::to_string(compared) +
           " shared points >= 15 dB";
  return ok;
}

bool c8_analytic_numeric_oracles(std::string& detail) {
  bool ok = true;
  std::string parts;

  // (a) density normalization and max-of-2 histogram
  for (int n : {1, 2, 3, 4}) {
    const double integral = oracles::integrate(
        [n](double r) { return pnc::order_stat_density(r, n); }, 0.0, 9.0, 1e-12);
    if (std::abs(integral - 1.0) > 1e-8) ok = false;
  }
  {
    pnc::rng::Engine eng = pnc::rng::make_stream(88001, 0, 0);
    const int n = 1'000'000;
    std::vector<double> samples;
    samples.reserve(n);
    for (int i = 0; i < n; ++i)
      samples.push_back(std::max(std::abs(pnc::draw_cn(eng, 1.0)),
                                 std::abs(pnc::draw_cn(eng, 1.0))));
    const double stat = oracles::chi2_equal_prob(
        samples, [](double p) { return std::sqrt(-std::log(1.0 - std::sqrt(p))); }, 40);
    if (stat >= oracles::kChi2Df39Q99) ok = false;
    parts += "(a) chi2=" + fmt(stat) + "<" + fmt(oracles::kChi2Df39Q99);
  }

  // (b) closed form vs 3-D quadrature, n_a = n_b = 1
  {
    double worst = 0.0;
    for (double db : {0.0, 5.0, 10.0, 15.0, 20.0}) {
      const double rho = std::pow(10.0, db / 10.0);
      const double s = rho * 2.0 / 4.0;
      const double closed = pnc::cross_exp_mean(s, s, 1, 1);
      const double quad = oracles::e_cross_exp_quadrature_n1(s, s);
      worst = std::max(worst, std::abs(closed - quad));
    }
    if (worst > 1e-6) ok = false;
    parts += ", (b) |closed-quad|<=" + fmt(worst);
  }

  // (c) closed form vs selected-channel Monte Carlo for (2,2)
  {
    const double rho = 10.0;
    const double closed = pnc::cross_exp_mean(rho * 0.5, rho * 0.5, 2, 2);
    pnc::rng::Engine eng = pnc::rng::make_stream(88002, 1, 0);
    const int n = 1'000'000;
    double acc = 0.0, acc2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const pnc::ChannelRealization ch = pnc::draw_channel(eng, 2, 2);
      const pnc::AntennaChoice pick = pnc::tas1_select(ch);
      const double v =
          std::exp(-rho / 4.0 * std::norm(pick.h_a * std::numbers::sqrt2 +
                                          pick.h_b * std::numbers::sqrt2));
      acc += v;
      acc2 += v * v;
    }
    const double mean = acc / n;
    const double se = std::sqrt((acc2 / n - mean * mean) / n);
    if (std::abs(closed - mean) > 3.0 * se) ok = false;
    parts += ", (c) |closed-mc|=" + fmt(std::abs(closed - mean)) + "<=3se=" + fmt(3.0 * se);
  }

  // (d) denominator identity on 20 random tuples
  {
    std::mt19937_64 eng(88003);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> pick_n(1, 6);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const int k = pick_n(eng), l = pick_n(eng);
      const double rho = std::pow(10.0, 4.0 * u(eng) - 1.0);
      const double a2 = 4.0 * u(eng) + 0.05, b2 = 4.0 * u(eng) + 0.05;
      const double psi = (1.0 + rho * a2 / (4 * k)) * (1.0 + rho * b2 / (4 * l)) -
                         rho * rho * a2 * b2 / (16.0 * k * l);
      const double expanded = 1.0 + rho * a2 / (4 * k) + rho * b2 / (4 * l);
      worst = std::max(worst, std::abs(psi - expanded) / expanded);
    }
    if (worst > 1e-10) ok = false;
    parts += ", (d) identity rel err " + fmt(worst);
  }

  detail = parts;
  return ok;
}

bool c9_asymptotics(std::string& detail) {
  bool ok = true;
  const cplx dx(std::numbers::sqrt2, 0.0);
  double worst_coeff = 0.0;
  for (int n_ant = 2; n_ant <= 6; ++n_ant)
    for (int n = 1; n < n_ant; ++n)
      for (pnc::ChianiTerm v : {pnc::ChianiTerm::Quarter, pnc::ChianiTerm::Third}) {
        const double c = std::abs(pnc::asymptotic_coeff(n, n_ant, dx, v));
        worst_coeff = std::max(worst_coeff, c);
        if (c > 1e-9) ok = false;
      }
  double worst_rel = 0.0;
  const double rho = 1e6;
  for (int n_ant = 1; n_ant <= 6; ++n_ant) {
    const double zeta1 =
        pnc::max_rayleigh_exp_mean(rho * std::norm(dx) / 4.0, n_ant) / 12.0;
    const double lead = pnc::asymptotic_coeff(n_ant, n_ant, dx, pnc::ChianiTerm::Quarter);
    const double rel = std::abs(zeta1 * std::pow(rho, n_ant) - lead) / lead;
    worst_rel = std::max(worst_rel, rel);
    if (rel > 0.02) ok = false;
  }
  detail = "max |C_{-n}| below order = " + fmt(worst_coeff) +
           " (tol 1e-9); worst zeta1*rho^N vs C_{-N} rel err " + fmt(worst_rel) +
           " (tol 2%)";
  return ok;
}

bool c10_rank_machinery(std::string& detail) {
  const Constellation c = Constellation::psk(2);
  const PncMap m = PncMap::xor_map(2);
  const auto dset = pnc::build_difference_matrix_set(2, 2, c, m);
  bool ok = dset.family_size() == 256;

  const int rank = pnc::r_min(dset);
  if (rank != std::min(dset.n_a(), dset.n_b())) ok = false;

  const pnc::LambdaStar l1 = pnc::lambda_star(dset);
  const pnc::LambdaStar l2 = pnc::lambda_star(dset);
  if (!(l1.value > 0.0) || l1.value != l2.value || !l1.exact) ok = false;

  const auto sampled = pnc::lambda_star(pnc::build_difference_matrix_set(
      2, 2, c, m, pnc::EnumerationMode::sampled(2'000)));
  if (sampled.value < l1.value - 1e-12) ok = false;

  const auto lo = pnc::tas2_ser_bound(1e2, 2, 2, 2, l1.value);
  const auto hi = pnc::tas2_ser_bound(1e5, 2, 2, 2, l1.value);
  const double slope = std::log10(lo.value / hi.value) / 3.0;
  if (std::abs(slope - 2.0) > 1e-6) ok = false;

  detail = "256 matrices, r_min=" + std::to_string(rank) + ", lambda*=" + fmt(l1.value) +
           " (exact, reproducible), sampled=" + fmt(sampled.value) +
           " >= exact, bound slope err " + fmt(std::abs(slope - 2.0));
  return ok;
}

bool c11_determinism(std::string& detail) {
  const std::string base =
      std::string(PNC_CLI_PATH) +
      " simulate --mod qpsk --na 2 --nb 2 --scheme tas2 --snr-db 10:10:30"
      " --frames 2000 --spf 100 --seed 123";
  const std::string f1 = "/tmp/pnc_acceptance_w1a.csv";
  const std::string f2 = "/tmp/pnc_acceptance_w1b.csv";
  const std::string f3 = "/tmp/pnc_acceptance_w8.csv";
  bool ok = true;
  ok = ok && std::system((base + " --workers 1 --out " + f1).c_str()) == 0;
  ok = ok && std::system((base + " --workers 1 --out " + f2).c_str()) == 0;
  ok = ok && std::system((base + " --workers 8 --out " + f3).c_str()) == 0;
  auto slurp = [](const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const std::string a = slurp(f1), b = slurp(f2), c = slurp(f3);
  ok = ok && !a.empty() && a == b && a == c;
  std::remove(f1.c_str());
  std::remove(f2.c_str());
  std::remove(f3.c_str());
  detail = "repeat and workers 1 vs 8 give byte-identical CSV (" +
           std::to_string(a.size()) + " bytes)";
  return ok;
}

struct Criterion {
  int id;
  const char* title;
  std::function<bool(std::string&)> fn;
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--only" && i + 1 < argc) only = std::atoi(argv[i + 1]);
  }

  const std::vector<Criterion> criteria = {
      {1, "exclusive-law suite (M = 2, 4, 8, QPSK table exact)", c1_exclusive_law},
      {2, "2x2 channel fixture: TAS1 (1,1), TAS2 (1,2), distance gain", c2_selection_fixture},
      {3, "TAS1 bound tightness over 10-35 dB for (2,2) and (3,3)", c3_bound_tightness},
      {4, "TAS1 diversity collapses to 1 for (2,2), (3,2), (3,3)", c4_tas1_diversity_collapse},
      {5, "BPSK TAS1 diversity approaches min(N_A, N_B) = 2", c5_bpsk_diversity},
      {6, "TAS2 diversity >= 1.7 for (2,2), (3,2); >= 2.5 for (3,3)", c6_tas2_diversity},
      {7, "TAS2 outperforms TAS1 with disjoint CIs at >= 15 dB (2,2)", c7_scheme_ordering},
      {8, "analytic-numeric oracles (density, quadrature, MC, identity)", c8_analytic_numeric_oracles},
      {9, "asymptotic coefficients vanish below order; limits match", c9_asymptotics},
      {10, "rank machinery: exhaustive family, lambda*, bound slope", c10_rank_machinery},
      {11, "determinism: byte-identical CSV across repeats and workers", c11_determinism},
  };

  int failures = 0;
  const auto t0 = std::chrono::steady_clock::now();
  for (const Criterion& c : criteria) {
    if (only != 0 && c.id != only) continue;
    std::cerr << "[run ] C" << c.id << ": " << c.title << "\n";
    std::string detail;
    bool pass = false;
    try {
      pass = c.fn(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (!pass) ++failures;
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << "C" << c.id << ": " << c.title
              << " -- " << detail << "\n";
    std::cout.flush();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << (failures == 0 ? "ALL CRITERIA PASSED" : "CRITERIA FAILED") << " ("
            << secs << " s total)\n";
  return failures;
}
