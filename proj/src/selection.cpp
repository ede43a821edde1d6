#include "pnc/selection.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace pnc {

DiffPairTable::DiffPairTable(const Constellation& c, const PncMap& m) {
  if (c.order() != m.order())
    throw std::invalid_argument("DiffPairTable: constellation and map order mismatch");
  if (!verify_exclusive_law(m))
    throw std::invalid_argument("DiffPairTable: map does not satisfy the exclusive law");
  const int M = c.order();
  // Dedup key: components quantized at 1e-9. Distinct PSK difference values
  // are separated by far more than that for the orders in scope (M <= 16).
  std::set<std::array<long long, 4>> seen;
  for (int a = 0; a < M; ++a)
    for (int b = 0; b < M; ++b)
      for (int a2 = 0; a2 < M; ++a2)
        for (int b2 = 0; b2 < M; ++b2) {
          if (m.map(a, b) == m.map(a2, b2)) continue;
          const cplx da = c.point(a) - c.point(a2);
          const cplx db = c.point(b) - c.point(b2);
          const std::array<long long, 4> key = {
              std::llround(da.real() * 1e9), std::llround(da.imag() * 1e9),
              std::llround(db.real() * 1e9), std::llround(db.imag() * 1e9)};
          if (seen.insert(key).second) pairs_.push_back({da, db});
        }
}

double DiffPairTable::min_distance(cplx h_a, cplx h_b) const {
  double best = std::numeric_limits<double>::infinity();
  for (const DiffPair& p : pairs_) {
    const double d = std::norm(h_a * p.dx_a + h_b * p.dx_b);
    if (d < best) best = d;
  }
  return best;
}

namespace {

int argmax_magnitude(const Eigen::VectorXcd& coeffs) {
  int best = 0;
  double best_mag = std::norm(coeffs[0]);
  for (int i = 1; i < coeffs.size(); ++i) {
    const double mag = std::norm(coeffs[i]);
    if (mag > best_mag) {
      best_mag = mag;
      best = i;
    }
  }
  return best;
}

}  // namespace

AntennaChoice tas1_select(const ChannelRealization& ch) {
  AntennaChoice out;
  out.idx_a = argmax_magnitude(ch.coeffs_a);
  out.idx_b = argmax_magnitude(ch.coeffs_b);
  out.h_a = ch.coeffs_a[out.idx_a];
  out.h_b = ch.coeffs_b[out.idx_b];
  return out;
}

double min_cluster_distance(cplx h_a, cplx h_b, const DiffPairTable& table) {
  return table.min_distance(h_a, h_b);
}

double min_cluster_distance(cplx h_a, cplx h_b, const Constellation& c,
                            const PncMap& m) {
  return DiffPairTable(c, m).min_distance(h_a, h_b);
}

AntennaChoice tas2_select(const ChannelRealization& ch, const DiffPairTable& table) {
  AntennaChoice out;
  double best = -1.0;
  for (int i = 0; i < ch.coeffs_a.size(); ++i)
    for (int j = 0; j < ch.coeffs_b.size(); ++j) {
      const double d = table.min_distance(ch.coeffs_a[i], ch.coeffs_b[j]);
      if (d > best) {
        best = d;
        out.idx_a = i;
        out.idx_b = j;
      }
    }
  out.h_a = ch.coeffs_a[out.idx_a];
  out.h_b = ch.coeffs_b[out.idx_b];
  return out;
}

AntennaChoice tas2_select(const ChannelRealization& ch, const Constellation& c,
                          const PncMap& m) {
  return tas2_select(ch, DiffPairTable(c, m));
}

}  // namespace pnc
