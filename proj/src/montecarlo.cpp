#include "pnc/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "pnc/channel.hpp"
#include "pnc/constellation.hpp"
#include "pnc/detector.hpp"
#include "pnc/errors.hpp"
#include "pnc/rng.hpp"
#include "pnc/selection.hpp"

namespace pnc {

void validate(const SimConfig& cfg) {
  if (!is_power_of_two(cfg.m_order) || cfg.m_order < 2)
    throw std::invalid_argument("SimConfig: m_order must be a power of two >= 2");
  if (cfg.n_a < 1 || cfg.n_b < 1)
    throw std::invalid_argument("SimConfig: antenna counts must be >= 1");
  if (cfg.frames < 1) throw std::invalid_argument("SimConfig: frames must be >= 1");
  if (cfg.symbols_per_frame < 1)
    throw std::invalid_argument("SimConfig: symbols_per_frame must be >= 1");
  if (cfg.workers < 0) throw std::invalid_argument("SimConfig: workers must be >= 0");
  for (std::size_t i = 1; i < cfg.snr_grid_db.size(); ++i)
    if (!(cfg.snr_grid_db[i] > cfg.snr_grid_db[i - 1]))
      throw std::invalid_argument("SimConfig: snr grid must be strictly increasing");
}

WilsonInterval wilson_interval(long long errors, long long trials, double z) {
  if (trials <= 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(errors) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  // Clamp so the interval always brackets p despite rounding (exact at the
  // e = 0 and e = n corners).
  return {std::max(0.0, std::min(center - half, p)),
          std::min(1.0, std::max(center + half, p))};
}

namespace {

struct PointContext {
  const SimConfig* cfg;
  double snr_db;
  Constellation c;
  PncMap map;
  DiffPairTable pairs;
  NoisePower np;
};

// Per-frame draw order is fixed: channel first, then per symbol
// (s_a, s_b, noise). The stream key makes every frame independent.
std::uint32_t simulate_frame(const PointContext& ctx, std::uint64_t frame) {
  rng::Engine eng =
      rng::make_stream(ctx.cfg->seed, rng::key_from(ctx.snr_db), frame);
  const ChannelRealization ch = draw_channel(eng, ctx.cfg->n_a, ctx.cfg->n_b);
  const AntennaChoice pick = ctx.cfg->scheme == Scheme::Tas1
                                 ? tas1_select(ch)
                                 : tas2_select(ch, ctx.pairs);
  const JointDetector det(pick.h_a, pick.h_b, ctx.np, ctx.c);
  std::uniform_int_distribution<int> sym(0, ctx.c.order() - 1);
  std::uint32_t errors = 0;
  for (int s = 0; s < ctx.cfg->symbols_per_frame; ++s) {
    const int sa = sym(eng);
    const int sb = sym(eng);
    const cplx noise = draw_cn(eng, ctx.np.n0);
    const cplx y = received_signal(pick.h_a, pick.h_b, ctx.c.point(sa),
                                   ctx.c.point(sb), noise, ctx.np);
    if (is_cluster_error(sa, sb, det.detect(y), ctx.map)) ++errors;
  }
  return errors;
}

}  // namespace

SerEstimate run_point(const SimConfig& cfg, double snr_db) {
  validate(cfg);
  Constellation c = Constellation::psk(cfg.m_order);
  PncMap map = PncMap::xor_map(cfg.m_order);
  DiffPairTable pairs(c, map);
  const PointContext ctx{&cfg,           snr_db,          std::move(c),
                         std::move(map), std::move(pairs), NoisePower::from_snr_db(snr_db)};
  int workers = cfg.workers;
  if (workers == 0) workers = static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;

  long long errors = 0;
  long long frames_done = 0;
  bool stopped = false;
  const long long wave = std::max<long long>(2048, 512LL * workers);
  std::vector<std::uint32_t> buf;
  for (long long f0 = 0; f0 < cfg.frames && !stopped; f0 += wave) {
    const long long n = std::min(wave, cfg.frames - f0);
    buf.assign(static_cast<std::size_t>(n), 0);
    if (workers == 1) {
      for (long long i = 0; i < n; ++i)
        buf[static_cast<std::size_t>(i)] =
            simulate_frame(ctx, static_cast<std::uint64_t>(f0 + i));
    } else {
      std::atomic<long long> next{0};
      std::vector<std::thread> pool;
      pool.reserve(static_cast<std::size_t>(workers));
      for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
          for (;;) {
            const long long i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= n) break;
            buf[static_cast<std::size_t>(i)] =
                simulate_frame(ctx, static_cast<std::uint64_t>(f0 + i));
          }
        });
      for (auto& t : pool) t.join();
    }
    // In-order scan keeps the stopping point independent of scheduling.
    for (long long i = 0; i < n; ++i) {
      errors += buf[static_cast<std::size_t>(i)];
      ++frames_done;
      if (cfg.max_errors > 0 && errors >= cfg.max_errors) {
        stopped = true;
        break;
      }
    }
  }

  SerEstimate est;
  est.snr_db = snr_db;
  est.errors = errors;
  est.trials = frames_done * cfg.symbols_per_frame;
  est.ser = est.trials > 0 ? static_cast<double>(errors) / est.trials : 0.0;
  const WilsonInterval ci = wilson_interval(errors, est.trials, kZ95);
  est.ci_low = ci.low;
  est.ci_high = ci.high;
  return est;
}

std::vector<SerEstimate> sweep(const SimConfig& cfg) {
  validate(cfg);
  if (cfg.snr_grid_db.empty())
    throw std::invalid_argument("sweep: snr grid must not be empty");
  std::vector<SerEstimate> out;
  out.reserve(cfg.snr_grid_db.size());
  for (double db : cfg.snr_grid_db) out.push_back(run_point(cfg, db));
  return out;
}

double fit_diversity_slope(const std::vector<SerEstimate>& points,
                           long long min_errors, double max_ser) {
  std::vector<double> xs, ys;
  for (const SerEstimate& p : points) {
    if (p.errors < min_errors || p.ser > max_ser || p.ser <= 0.0) continue;
    xs.push_back(p.snr_db / 10.0);
    ys.push_back(std::log10(p.ser));
  }
  if (xs.size() < 2)
    throw InsufficientPoints("fit_diversity_slope: need at least 2 qualifying points");
  const std::size_t n = xs.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx <= 0.0)
    throw InsufficientPoints("fit_diversity_slope: qualifying points share one SNR");
  return -sxy / sxx;
}

}  // namespace pnc
