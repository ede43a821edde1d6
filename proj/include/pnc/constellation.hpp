#pragma once

#include <utility>
#include <vector>

#include "pnc/types.hpp"

namespace pnc {

/// Unit average-energy M-ary PSK alphabet with integer index labeling.
///
/// BPSK is the antipodal pair {+1, -1}. QPSK uses the diagonal layout
/// x_s = e^{i(2s+1)pi/4}, i.e. components are exactly (+-1 +- i)/sqrt(2).
/// Higher orders place point s at angle 2*pi*s/M.
class Constellation {
 public:
  static Constellation psk(int order);

  int order() const noexcept { return static_cast<int>(points_.size()); }
  cplx point(int s) const;
  const std::vector<cplx>& points() const noexcept { return points_; }
  double average_energy() const noexcept;

 private:
  explicit Constellation(std::vector<cplx> pts) : points_(std::move(pts)) {}
  std::vector<cplx> points_;
};

Constellation make_psk(int order);

/// {x - x' | x, x' in S}, deduplicated and sorted by (re, im).
struct DifferenceSet {
  std::vector<cplx> values;

  bool contains(cplx v, double tol = 1e-12) const;
};

DifferenceSet difference_set(const Constellation& c, double tol = 1e-12);

/// Network-coding map on symbol indices, stored as a full M-by-M table.
/// The default is bitwise XOR; modular addition is an alternative that also
/// satisfies the exclusive law.
class PncMap {
 public:
  PncMap(int order, std::vector<int> table);  // row-major, index s_a * M + s_b

  static PncMap xor_map(int order);      // requires power-of-two order
  static PncMap mod_sum_map(int order);  // (s_a + s_b) mod M

  int order() const noexcept { return order_; }
  int map(int s_a, int s_b) const;
  int operator()(int s_a, int s_b) const { return map(s_a, s_b); }

 private:
  int order_;
  std::vector<int> table_;
};

inline int pnc_map(const PncMap& m, int s_a, int s_b) { return m.map(s_a, s_b); }

/// True iff the map is a bijection in each argument with the other fixed,
/// checked exhaustively over all M^2 pairs.
bool verify_exclusive_law(const PncMap& m);

/// Partition of all (s_a, s_b) pairs by network-coded symbol; entry r lists
/// the pairs mapped to r in lexicographic order. Requires the exclusive law.
std::vector<std::vector<std::pair<int, int>>> clusters(const PncMap& m);

bool is_power_of_two(int v) noexcept;

}  // namespace pnc
