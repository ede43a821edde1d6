#pragma once

#include <cstdint>
#include <vector>

#include "pnc/types.hpp"

namespace pnc {

enum class Scheme { Tas1, Tas2 };

struct SimConfig {
  int m_order = 4;
  int n_a = 2;
  int n_b = 2;
  Scheme scheme = Scheme::Tas2;
  std::vector<double> snr_grid_db;
  long long frames = 10'000;
  int symbols_per_frame = 100;
  std::uint64_t seed = 1;
  long long max_errors = 2'000;  // early-stop target per SNR point; <= 0 disables
  int workers = 0;               // 0 = hardware concurrency
};

void validate(const SimConfig& cfg);

struct SerEstimate {
  double snr_db = 0.0;
  long long errors = 0;
  long long trials = 0;
  double ser = 0.0;
  double ci_low = 0.0;   // 95% Wilson score interval
  double ci_high = 1.0;
};

struct WilsonInterval {
  double low = 0.0;
  double high = 1.0;
};

WilsonInterval wilson_interval(long long errors, long long trials, double z);

inline constexpr double kZ95 = 1.959963984540054;
inline constexpr double kZ99 = 2.5758293035489004;

/// Estimates the cluster SER at one SNR point. Frame f draws its randomness
/// from a stream keyed by (seed, snr_db, f), so the result is a pure function
/// of the config and SNR value; worker count and scheduling never change it.
/// Early stopping scans frames in index order and stops at the first frame
/// where the cumulative error count reaches max_errors.
SerEstimate run_point(const SimConfig& cfg, double snr_db);

/// One run_point per grid entry, in grid order.
std::vector<SerEstimate> sweep(const SimConfig& cfg);

/// Least-squares slope of log10(ser) against snr_db/10 over points with at
/// least min_errors errors and ser <= max_ser, negated so the value estimates
/// the diversity order.
double fit_diversity_slope(const std::vector<SerEstimate>& points,
                           long long min_errors = 100, double max_ser = 1e-2);

}  // namespace pnc
