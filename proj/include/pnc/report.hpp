#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pnc/montecarlo.hpp"

namespace pnc {

inline constexpr const char* kToolVersion = "0.1.0";

std::string mod_name(int m_order);                  // 2 -> bpsk, 4 -> qpsk, 8 -> 8psk, ...
int mod_order_from_name(const std::string& name);   // throws on unknown names
const char* scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);

/// Shortest-width printf %g with 17 significant digits; locale-independent.
std::string fmt_g17(double v);

/// CSV with columns snr_db,scheme,mod,na,nb,trials,errors,ser,ci_low,ci_high.
std::string simulate_csv(const SimConfig& cfg, const std::vector<SerEstimate>& rows);

struct BoundRow {
  double snr_db = 0.0;
  double bound = 0.0;
  double lambda_star = 0.0;  // tas2 only
};

/// CSV with columns snr_db,bound,scheme,mod,na,nb[,lambda_star].
std::string bound_csv(const SimConfig& cfg, Scheme bound_scheme,
                      const std::vector<BoundRow>& rows);

/// Everything needed to reproduce a run bit-exactly, plus its results.
struct RunManifest {
  std::string tool_version = kToolVersion;
  std::string timestamp;  // ISO-8601 UTC
  SimConfig config;
  std::vector<SerEstimate> results;
  std::optional<Scheme> bound_scheme;
  std::vector<BoundRow> bounds;

  std::string to_json() const;
  static RunManifest from_json(const std::string& text);
};

std::string utc_timestamp_now();

}  // namespace pnc
