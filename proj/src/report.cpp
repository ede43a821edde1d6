#include "pnc/report.hpp"

#include <cstdio>
#include <ctime>
#include <stdexcept>

#include <json.hpp>

namespace pnc {

std::string mod_name(int m_order) {
  switch (m_order) {
    case 2: return "bpsk";
    case 4: return "qpsk";
    default: return std::to_string(m_order) + "psk";
  }
}

int mod_order_from_name(const std::string& name) {
  if (name == "bpsk") return 2;
  if (name == "qpsk") return 4;
  if (name == "8psk") return 8;
  if (name == "16psk") return 16;
  throw std::invalid_argument("unknown modulation name: " + name);
}

const char* scheme_name(Scheme s) { return s == Scheme::Tas1 ? "tas1" : "tas2"; }

Scheme scheme_from_name(const std::string& name) {
  if (name == "tas1") return Scheme::Tas1;
  if (name == "tas2") return Scheme::Tas2;
  throw std::invalid_argument("unknown scheme name: " + name);
}

std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string simulate_csv(const SimConfig& cfg, const std::vector<SerEstimate>& rows) {
  std::string out = "snr_db,scheme,mod,na,nb,trials,errors,ser,ci_low,ci_high\n";
  for (const SerEstimate& r : rows) {
    out += fmt_g17(r.snr_db);
    out += ',';
    out += scheme_name(cfg.scheme);
    out += ',';
    out += mod_name(cfg.m_order);
    out += ',';
    out += std::to_string(cfg.n_a);
    out += ',';
    out += std::to_string(cfg.n_b);
    out += ',';
    out += std::to_string(r.trials);
    out += ',';
    out += std::to_string(r.errors);
    out += ',';
    out += fmt_g17(r.ser);
    out += ',';
    out += fmt_g17(r.ci_low);
    out += ',';
    out += fmt_g17(r.ci_high);
    out += '\n';
  }
  return out;
}

std::string bound_csv(const SimConfig& cfg, Scheme bound_scheme,
                      const std::vector<BoundRow>& rows) {
  const bool tas2 = bound_scheme == Scheme::Tas2;
  std::string out = tas2 ? "snr_db,bound,scheme,mod,na,nb,lambda_star\n"
                         : "snr_db,bound,scheme,mod,na,nb\n";
  for (const BoundRow& r : rows) {
    out += fmt_g17(r.snr_db);
    out += ',';
    out += fmt_g17(r.bound);
    out += ',';
    out += scheme_name(bound_scheme);
    out += ',';
    out += mod_name(cfg.m_order);
    out += ',';
    out += std::to_string(cfg.n_a);
    out += ',';
    out += std::to_string(cfg.n_b);
    if (tas2) {
      out += ',';
      out += fmt_g17(r.lambda_star);
    }
    out += '\n';
  }
  return out;
}

std::string utc_timestamp_now() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string RunManifest::to_json() const {
  nlohmann::json j;
  j["tool_version"] = tool_version;
  j["timestamp"] = timestamp;
  nlohmann::json c;
  c["mod"] = mod_name(config.m_order);
  c["m_order"] = config.m_order;
  c["na"] = config.n_a;
  c["nb"] = config.n_b;
  c["scheme"] = scheme_name(config.scheme);
  c["snr_grid_db"] = config.snr_grid_db;
  c["frames"] = config.frames;
  c["symbols_per_frame"] = config.symbols_per_frame;
  c["seed"] = config.seed;
  c["max_errors"] = config.max_errors;
  c["workers"] = config.workers;
  j["config"] = std::move(c);
  nlohmann::json rs = nlohmann::json::array();
  for (const SerEstimate& r : results) {
    rs.push_back({{"snr_db", r.snr_db},
                  {"errors", r.errors},
                  {"trials", r.trials},
                  {"ser", r.ser},
                  {"ci_low", r.ci_low},
                  {"ci_high", r.ci_high}});
  }
  j["results"] = std::move(rs);
  if (bound_scheme) {
    nlohmann::json bs = nlohmann::json::array();
    for (const BoundRow& r : bounds)
      bs.push_back({{"snr_db", r.snr_db},
                    {"bound", r.bound},
                    {"lambda_star", r.lambda_star}});
    j["bound_scheme"] = scheme_name(*bound_scheme);
    j["bounds"] = std::move(bs);
  }
  return j.dump(2) + "\n";
}

RunManifest RunManifest::from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  RunManifest m;
  m.tool_version = j.at("tool_version").get<std::string>();
  m.timestamp = j.at("timestamp").get<std::string>();
  const nlohmann::json& c = j.at("config");
  m.config.m_order = c.at("m_order").get<int>();
  m.config.n_a = c.at("na").get<int>();
  m.config.n_b = c.at("nb").get<int>();
  m.config.scheme = scheme_from_name(c.at("scheme").get<std::string>());
  m.config.snr_grid_db = c.at("snr_grid_db").get<std::vector<double>>();
  m.config.frames = c.at("frames").get<long long>();
  m.config.symbols_per_frame = c.at("symbols_per_frame").get<int>();
  m.config.seed = c.at("seed").get<std::uint64_t>();
  m.config.max_errors = c.at("max_errors").get<long long>();
  m.config.workers = c.at("workers").get<int>();
  if (j.contains("results")) {
    for (const auto& r : j.at("results")) {
      SerEstimate e;
      e.snr_db = r.at("snr_db").get<double>();
      e.errors = r.at("errors").get<long long>();
      e.trials = r.at("trials").get<long long>();
      e.ser = r.at("ser").get<double>();
      e.ci_low = r.at("ci_low").get<double>();
      e.ci_high = r.at("ci_high").get<double>();
      m.results.push_back(e);
    }
  }
  if (j.contains("bound_scheme")) {
    m.bound_scheme = scheme_from_name(j.at("bound_scheme").get<std::string>());
    for (const auto& r : j.at("bounds")) {
      BoundRow b;
      b.snr_db = r.at("snr_db").get<double>();
      b.bound = r.at("bound").get<double>();
      b.lambda_star = r.value("lambda_star", 0.0);
      m.bounds.push_back(b);
    }
  }
  return m;
}

}  // namespace pnc
