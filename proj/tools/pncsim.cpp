// pncsim: Monte Carlo and analytic SER toolkit for a two-user MISO relay
// with physical-layer network coding and transmit antenna selection.
//
// Subcommands:
//   simulate   frame-based Monte Carlo SER sweep (CSV out)
//   bound      closed-form SER bounds over an SNR grid (CSV out)
//   select     one-shot antenna selection report for given channels

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pnc/bounds.hpp"
#include "pnc/constellation.hpp"
#include "pnc/errors.hpp"
#include "pnc/montecarlo.hpp"
#include "pnc/report.hpp"
#include "pnc/selection.hpp"

namespace {

std::vector<double> parse_snr_grid(const std::string& spec) {
  double start = 0.0, step = 0.0, stop = 0.0;
  char extra = 0;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%lf%c", &start, &step, &stop, &extra) != 3)
    throw CLI::ValidationError("--snr-db", "expected start:step:stop, got '" + spec + "'");
  if (step <= 0.0) throw CLI::ValidationError("--snr-db", "step must be positive");
  if (stop < start) throw CLI::ValidationError("--snr-db", "stop must be >= start");
  const long long count = static_cast<long long>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(count));
  for (long long i = 0; i < count; ++i) grid.push_back(start + step * static_cast<double>(i));
  return grid;
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text;
}

std::vector<pnc::cplx> parse_inline_channels(const std::vector<std::string>& strs,
                                             const char* flag) {
  std::vector<pnc::cplx> out;
  for (const std::string& s : strs) {
    double re = 0.0, im = 0.0;
    std::string norm = s;
    for (char& ch : norm)
      if (ch == ',') ch = ' ';
    if (std::sscanf(norm.c_str(), "%lf %lf", &re, &im) != 2)
      throw std::runtime_error(std::string(flag) + ": expected 're im', got '" + s + "'");
    out.emplace_back(re, im);
  }
  return out;
}

// Channel file: one coefficient per line as "re im"; the first n_a lines are
// user A, the next n_b user B. Blank lines and '#' comments are skipped.
std::pair<std::vector<pnc::cplx>, std::vector<pnc::cplx>> read_channel_file(
    const std::string& path, int n_a, int n_b) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open channel file: " + path);
  std::vector<pnc::cplx> vals;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    double re = 0.0, im = 0.0;
    char extra = 0;
    const int got = std::sscanf(line.c_str(), "%lf %lf %c", &re, &im, &extra);
    if (got != 2)
      throw std::runtime_error(path + ": line " + std::to_string(lineno) +
                               ": expected 're im' floats");
    vals.emplace_back(re, im);
  }
  if (static_cast<int>(vals.size()) != n_a + n_b)
    throw std::runtime_error(path + ": expected " + std::to_string(n_a + n_b) +
                             " coefficients (na + nb), found " +
                             std::to_string(vals.size()));
  return {{vals.begin(), vals.begin() + n_a}, {vals.begin() + n_a, vals.end()}};
}

struct SimulateOpts {
  std::string mod = "qpsk";
  int na = 2, nb = 2;
  std::string scheme = "tas2";
  std::string snr = "0:5:30";
  long long frames = 10'000;
  int spf = 100;
  std::uint64_t seed = 1;
  long long max_errors = 2'000;
  int workers = 0;
  std::string out;
  std::string manifest;
  std::string from_manifest;
};

int run_simulate(const SimulateOpts& o) {
  pnc::SimConfig cfg;
  if (!o.from_manifest.empty()) {
    std::ifstream in(o.from_manifest);
    if (!in) throw std::runtime_error("cannot open manifest: " + o.from_manifest);
    std::stringstream ss;
    ss << in.rdbuf();
    cfg = pnc::RunManifest::from_json(ss.str()).config;
  } else {
    cfg.m_order = pnc::mod_order_from_name(o.mod);
    cfg.n_a = o.na;
    cfg.n_b = o.nb;
    cfg.scheme = pnc::scheme_from_name(o.scheme);
    cfg.snr_grid_db = parse_snr_grid(o.snr);
    cfg.frames = o.frames;
    cfg.symbols_per_frame = o.spf;
    cfg.seed = o.seed;
    cfg.max_errors = o.max_errors;
    cfg.workers = o.workers;
  }
  const std::vector<pnc::SerEstimate> rows = pnc::sweep(cfg);
  write_output(pnc::simulate_csv(cfg, rows), o.out);
  if (!o.manifest.empty()) {
    pnc::RunManifest m;
    m.timestamp = pnc::utc_timestamp_now();
    m.config = cfg;
    m.results = rows;
    write_output(m.to_json(), o.manifest);
  }
  return 0;
}

struct BoundOpts {
  std::string mod = "qpsk";
  int na = 2, nb = 2;
  std::string snr = "0:5:30";
  std::string bound = "tas1";
  std::string lambda_mode = "exhaustive";
  std::string out;
  std::string manifest;
};

int run_bound(const BoundOpts& o) {
  pnc::SimConfig cfg;
  cfg.m_order = pnc::mod_order_from_name(o.mod);
  cfg.n_a = o.na;
  cfg.n_b = o.nb;
  cfg.snr_grid_db = parse_snr_grid(o.snr);
  const pnc::Scheme bound_scheme = pnc::scheme_from_name(o.bound);
  cfg.scheme = bound_scheme;

  const pnc::Constellation c = pnc::Constellation::psk(cfg.m_order);
  const pnc::PncMap map = pnc::PncMap::xor_map(cfg.m_order);
  std::vector<pnc::BoundRow> rows;
  if (bound_scheme == pnc::Scheme::Tas1) {
    for (double db : cfg.snr_grid_db) {
      const double rho = std::pow(10.0, db / 10.0);
      rows.push_back({db, pnc::tas1_ser_bound(rho, cfg.n_a, cfg.n_b, c, map), 0.0});
    }
  } else {
    pnc::EnumerationMode mode = pnc::EnumerationMode::exhaustive();
    if (o.lambda_mode == "exhaustive") {
      // default
    } else if (o.lambda_mode == "analytic-rmin") {
      mode = pnc::EnumerationMode::analytic_rmin();
    } else if (o.lambda_mode.rfind("sampled:", 0) == 0) {
      const std::string countstr = o.lambda_mode.substr(8);
      char* end = nullptr;
      const unsigned long long count = std::strtoull(countstr.c_str(), &end, 10);
      if (end == countstr.c_str() || *end != '\0' || count == 0)
        throw CLI::ValidationError("--lambda-mode", "expected sampled:<count>");
      mode = pnc::EnumerationMode::sampled(count);
    } else {
      throw CLI::ValidationError(
          "--lambda-mode", "expected exhaustive, sampled:<count> or analytic-rmin");
    }
    const pnc::DifferenceMatrixSet dset =
        pnc::build_difference_matrix_set(cfg.n_a, cfg.n_b, c, map, mode);
    const pnc::LambdaStar ls = pnc::lambda_star(dset);
    if (!ls.exact)
      std::cerr << "note: lambda* is a sampled upper estimate (" << ls.value << ")\n";
    // rho * lambda / (4n) >= 10 marks where the high-SNR bound is meaningful
    const double valid_db =
        10.0 * std::log10(40.0 * cfg.n_a * cfg.n_b / ls.value);
    if (cfg.snr_grid_db.front() < valid_db)
      std::cerr << "warning: the high-SNR bound is not meaningful below "
                << pnc::fmt_g17(valid_db) << " dB for this lambda*\n";
    for (double db : cfg.snr_grid_db) {
      const double rho = std::pow(10.0, db / 10.0);
      const pnc::Tas2Bound b =
          pnc::tas2_ser_bound(rho, cfg.n_a, cfg.n_b, cfg.m_order, ls.value);
      rows.push_back({db, b.value, ls.value});
    }
  }
  write_output(pnc::bound_csv(cfg, bound_scheme, rows), o.out);
  if (!o.manifest.empty()) {
    pnc::RunManifest m;
    m.timestamp = pnc::utc_timestamp_now();
    m.config = cfg;
    m.bound_scheme = bound_scheme;
    m.bounds = rows;
    write_output(m.to_json(), o.manifest);
  }
  return 0;
}

struct SelectOpts {
  std::string mod = "qpsk";
  std::string channels;
  std::vector<std::string> ha, hb;
  int na = 0, nb = 0;
  std::string scheme;  // empty = report both
  std::string out;
};

int run_select(const SelectOpts& o) {
  std::vector<pnc::cplx> ca, cb;
  if (!o.channels.empty()) {
    if (o.na < 1 || o.nb < 1)
      throw CLI::ValidationError("--channels", "requires --na and --nb");
    std::tie(ca, cb) = read_channel_file(o.channels, o.na, o.nb);
  } else {
    ca = parse_inline_channels(o.ha, "--ha");
    cb = parse_inline_channels(o.hb, "--hb");
    if (ca.empty() || cb.empty())
      throw CLI::ValidationError("select", "provide --channels or at least one --ha and --hb");
  }

  const pnc::Constellation c = pnc::Constellation::psk(pnc::mod_order_from_name(o.mod));
  const pnc::PncMap map = pnc::PncMap::xor_map(c.order());
  const pnc::DiffPairTable table(c, map);
  pnc::ChannelRealization ch;
  ch.coeffs_a = Eigen::Map<const Eigen::VectorXcd>(ca.data(), static_cast<Eigen::Index>(ca.size()));
  ch.coeffs_b = Eigen::Map<const Eigen::VectorXcd>(cb.data(), static_cast<Eigen::Index>(cb.size()));

  std::ostringstream rep;
  rep << "mod: " << pnc::mod_name(c.order()) << ", na: " << ca.size()
      << ", nb: " << cb.size() << "\n\n";
  rep << "min cluster distance per antenna combination (1-indexed):\n";
  for (std::size_t i = 0; i < ca.size(); ++i)
    for (std::size_t j = 0; j < cb.size(); ++j)
      rep << "  (" << i + 1 << "," << j + 1 << ")  "
          << pnc::fmt_g17(table.min_distance(ca[i], cb[j])) << "\n";

  const pnc::AntennaChoice t1 = pnc::tas1_select(ch);
  const pnc::AntennaChoice t2 = pnc::tas2_select(ch, table);
  rep << "\nTAS1: (" << t1.idx_a + 1 << "," << t1.idx_b + 1 << ")  min cluster distance "
      << pnc::fmt_g17(table.min_distance(t1.h_a, t1.h_b)) << "\n";
  rep << "TAS2: (" << t2.idx_a + 1 << "," << t2.idx_b + 1 << ")  min cluster distance "
      << pnc::fmt_g17(table.min_distance(t2.h_a, t2.h_b)) << "\n";

  const auto cl = pnc::clusters(map);
  auto dump_points = [&](const char* name, const pnc::AntennaChoice& pick) {
    rep << "\nnoise-free relay points for " << name << " choice (" << pick.idx_a + 1
        << "," << pick.idx_b + 1 << "):\n";
    rep << "  s_a s_b s_r  re  im\n";
    for (int sa = 0; sa < c.order(); ++sa)
      for (int sb = 0; sb < c.order(); ++sb) {
        const pnc::cplx p = pick.h_a * c.point(sa) + pick.h_b * c.point(sb);
        rep << "  " << sa << "   " << sb << "   " << map.map(sa, sb) << "   "
            << pnc::fmt_g17(p.real()) << " " << pnc::fmt_g17(p.imag()) << "\n";
      }
  };
  if (o.scheme.empty() || o.scheme == "tas1") dump_points("TAS1", t1);
  if (o.scheme.empty() || o.scheme == "tas2") dump_points("TAS2", t2);

  write_output(rep.str(), o.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SER toolkit for network-coded two-way relaying with transmit antenna selection"};
  app.set_version_flag("--version", pnc::kToolVersion);
  app.require_subcommand(1);

  SimulateOpts sim;
  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo SER sweep");
  simulate->add_option("--mod", sim.mod, "modulation: bpsk, qpsk, 8psk")
      ->check(CLI::IsMember({"bpsk", "qpsk", "8psk"}));
  simulate->add_option("--na", sim.na, "antennas at user A");
  simulate->add_option("--nb", sim.nb, "antennas at user B");
  simulate->add_option("--scheme", sim.scheme, "selection rule: tas1 or tas2")
      ->check(CLI::IsMember({"tas1", "tas2"}));
  simulate->add_option("--snr-db", sim.snr, "SNR grid start:step:stop (dB, inclusive)");
  simulate->add_option("--frames", sim.frames, "fading frames per SNR point");
  simulate->add_option("--spf", sim.spf, "symbols per frame");
  simulate->add_option("--seed", sim.seed, "base RNG seed");
  simulate->add_option("--max-errors", sim.max_errors,
                       "early-stop error target per point (<= 0 disables)");
  simulate->add_option("--workers", sim.workers, "worker threads (0 = hardware)");
  simulate->add_option("--out", sim.out, "output CSV path (default stdout)");
  simulate->add_option("--manifest", sim.manifest, "also write a run manifest (JSON)");
  simulate->add_option("--from-manifest", sim.from_manifest,
                       "take the full configuration from a manifest file");

  BoundOpts bnd;
  CLI::App* bound = app.add_subcommand("bound", "closed-form SER bounds");
  bound->add_option("--mod", bnd.mod, "modulation: bpsk, qpsk, 8psk")
      ->check(CLI::IsMember({"bpsk", "qpsk", "8psk"}));
  bound->add_option("--na", bnd.na, "antennas at user A");
  bound->add_option("--nb", bnd.nb, "antennas at user B");
  bound->add_option("--snr-db", bnd.snr, "SNR grid start:step:stop (dB, inclusive)");
  bound->add_option("--bound", bnd.bound, "which bound: tas1 or tas2")
      ->check(CLI::IsMember({"tas1", "tas2"}));
  bound->add_option("--lambda-mode", bnd.lambda_mode,
                    "tas2 lambda*: exhaustive, sampled:<count>, analytic-rmin");
  bound->add_option("--out", bnd.out, "output CSV path (default stdout)");
  bound->add_option("--manifest", bnd.manifest, "also write a run manifest (JSON)");

  SelectOpts sel;
  CLI::App* select = app.add_subcommand("select", "antenna selection report");
  select->add_option("--mod", sel.mod, "modulation: bpsk, qpsk, 8psk")
      ->check(CLI::IsMember({"bpsk", "qpsk", "8psk"}));
  select->add_option("--channels", sel.channels,
                     "channel file: one 're im' per line, user A lines first");
  select->add_option("--na", sel.na, "user A coefficient count in --channels");
  select->add_option("--nb", sel.nb, "user B coefficient count in --channels");
  select->add_option("--ha", sel.ha, "inline user A coefficient 're im' (repeatable)");
  select->add_option("--hb", sel.hb, "inline user B coefficient 're im' (repeatable)");
  select->add_option("--scheme", sel.scheme, "restrict the relay-point dump to one rule")
      ->check(CLI::IsMember({"tas1", "tas2"}));
  select->add_option("--out", sel.out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (simulate->parsed()) return run_simulate(sim);
    if (bound->parsed()) return run_bound(bnd);
    if (select->parsed()) return run_select(sel);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const pnc::EnumerationTooLarge& e) {
    std::cerr << "error: " << e.what()
              << "\nhint: use --lambda-mode sampled:<count> for this configuration\n";
    return 3;
  } catch (const std::invalid_argument& e) {  // bad flag values
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
