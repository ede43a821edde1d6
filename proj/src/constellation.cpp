#include "pnc/constellation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pnc {

bool is_power_of_two(int v) noexcept { return v > 0 && (v & (v - 1)) == 0; }

Constellation Constellation::psk(int order) {
  if (order < 2 || !is_power_of_two(order))
    throw std::invalid_argument(
        "Constellation::psk: order must be a power of two >= 2 (XOR network "
        "coding requires a power-of-two alphabet)");
  std::vector<cplx> pts(static_cast<std::size_t>(order));
  if (order == 2) {
    pts[0] = cplx(1.0, 0.0);
    pts[1] = cplx(-1.0, 0.0);
  } else if (order == 4) {
    // Exact components so the diagonal QPSK points are bitwise (+-1 +- i)/sqrt(2).
    const double h = std::numbers::sqrt2 / 2.0;
    pts[0] = cplx(h, h);
    pts[1] = cplx(-h, h);
    pts[2] = cplx(-h, -h);
    pts[3] = cplx(h, -h);
  } else {
    for (int s = 0; s < order; ++s) {
      const double ang = 2.0 * std::numbers::pi * s / order;
      pts[static_cast<std::size_t>(s)] = cplx(std::cos(ang), std::sin(ang));
    }
  }
  return Constellation(std::move(pts));
}

Constellation make_psk(int order) { return Constellation::psk(order); }

cplx Constellation::point(int s) const {
  if (s < 0 || s >= order())
    throw std::out_of_range("Constellation::point: symbol index out of range");
  return points_[static_cast<std::size_t>(s)];
}

double Constellation::average_energy() const noexcept {
  double acc = 0.0;
  for (const cplx& p : points_) acc += std::norm(p);
  return acc / static_cast<double>(points_.size());
}

bool DifferenceSet::contains(cplx v, double tol) const {
  return std::any_of(values.begin(), values.end(),
                     [&](cplx w) { return std::abs(w - v) <= tol; });
}

DifferenceSet difference_set(const Constellation& c, double tol) {
  std::vector<cplx> all;
  all.reserve(static_cast<std::size_t>(c.order()) * c.order());
  for (const cplx& x : c.points())
    for (const cplx& xp : c.points()) all.push_back(x - xp);
  std::sort(all.begin(), all.end(), [](cplx a, cplx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  DifferenceSet out;
  for (const cplx& v : all) {
    if (out.values.empty() || std::abs(out.values.back() - v) > tol)
      out.values.push_back(v);
  }
  return out;
}

PncMap::PncMap(int order, std::vector<int> table)
    : order_(order), table_(std::move(table)) {
  if (order_ < 2) throw std::invalid_argument("PncMap: order must be >= 2");
  if (table_.size() != static_cast<std::size_t>(order_) * order_)
    throw std::invalid_argument("PncMap: table must have order^2 entries");
  for (int v : table_)
    if (v < 0 || v >= order_)
      throw std::invalid_argument("PncMap: table entry out of range");
}

PncMap PncMap::xor_map(int order) {
  if (!is_power_of_two(order) || order < 2)
    throw std::invalid_argument("PncMap::xor_map: order must be a power of two >= 2");
  std::vector<int> t(static_cast<std::size_t>(order) * order);
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b)
      t[static_cast<std::size_t>(a) * order + b] = a ^ b;
  return PncMap(order, std::move(t));
}

PncMap PncMap::mod_sum_map(int order) {
  if (order < 2) throw std::invalid_argument("PncMap::mod_sum_map: order must be >= 2");
  std::vector<int> t(static_cast<std::size_t>(order) * order);
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b)
      t[static_cast<std::size_t>(a) * order + b] = (a + b) % order;
  return PncMap(order, std::move(t));
}

int PncMap::map(int s_a, int s_b) const {
  if (s_a < 0 || s_a >= order_ || s_b < 0 || s_b >= order_)
    throw std::out_of_range("PncMap::map: symbol index out of range");
  return table_[static_cast<std::size_t>(s_a) * order_ + s_b];
}

bool verify_exclusive_law(const PncMap& m) {
  const int M = m.order();
  std::vector<char> seen(static_cast<std::size_t>(M));
  for (int a = 0; a < M; ++a) {  // rows: b -> map(a, b) must be a bijection
    std::fill(seen.begin(), seen.end(), 0);
    for (int b = 0; b < M; ++b) {
      char& s = seen[static_cast<std::size_t>(m.map(a, b))];
      if (s) return false;
      s = 1;
    }
  }
  for (int b = 0; b < M; ++b) {  // columns: a -> map(a, b)
    std::fill(seen.begin(), seen.end(), 0);
    for (int a = 0; a < M; ++a) {
      char& s = seen[static_cast<std::size_t>(m.map(a, b))];
      if (s) return false;
      s = 1;
    }
  }
  return true;
}

std::vector<std::vector<std::pair<int, int>>> clusters(const PncMap& m) {
  if (!verify_exclusive_law(m))
    throw std::invalid_argument("clusters: map does not satisfy the exclusive law");
  const int M = m.order();
  std::vector<std::vector<std::pair<int, int>>> out(static_cast<std::size_t>(M));
  for (int a = 0; a < M; ++a)
    for (int b = 0; b < M; ++b)
      out[static_cast<std::size_t>(m.map(a, b))].emplace_back(a, b);
  return out;
}

}  // namespace pnc
