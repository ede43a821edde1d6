#include "pnc/bounds.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pnc/errors.hpp"
#include "pnc/rng.hpp"
#include "pnc/selection.hpp"

namespace pnc {

namespace {

double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double acc = 1.0;
  for (int i = 1; i <= k; ++i) acc = acc * (n - k + i) / i;
  return acc;
}

double sign_pm(int exponent) { return (exponent & 1) ? -1.0 : 1.0; }

}  // namespace

double chiani_q(double x) {
  if (x < 0.0) throw std::domain_error("chiani_q: argument must be nonnegative");
  return std::exp(-0.5 * x * x) / 12.0 + std::exp(-2.0 * x * x / 3.0) / 4.0;
}

double order_stat_density(double r, int n) {
  if (n < 1) throw std::invalid_argument("order_stat_density: n must be >= 1");
  if (r < 0.0) return 0.0;
  double acc = 0.0;
  for (int k = 1; k <= n; ++k)
    acc += binom(n, k) * sign_pm(k - 1) * 2.0 * k * r * std::exp(-k * r * r);
  return acc;
}

double order_stat_cdf(double r, int n) {
  if (n < 1) throw std::invalid_argument("order_stat_cdf: n must be >= 1");
  if (r <= 0.0) return 0.0;
  return std::pow(1.0 - std::exp(-r * r), n);
}

double max_rayleigh_exp_mean(double s, int n) {
  if (n < 1) throw std::invalid_argument("max_rayleigh_exp_mean: n must be >= 1");
  double acc = 1.0;
  for (int j = 1; j <= n; ++j) acc *= j / (j + s);
  return acc;
}

double cross_exp_mean(double s_a, double s_b, int n_a, int n_b) {
  if (n_a < 1 || n_b < 1)
    throw std::invalid_argument("cross_exp_mean: antenna counts must be >= 1");
  double acc = 0.0;
  for (int k = 1; k <= n_a; ++k)
    for (int l = 1; l <= n_b; ++l) {
      const double denom = 1.0 + s_a / k + s_b / l;
      if (denom <= 0.0)
        throw NumericalDegeneracy("cross_exp_mean: non-positive denominator");
      acc += binom(n_a, k) * binom(n_b, l) * sign_pm(k + l) / denom;
    }
  return acc;
}

double case1_term(double rho, int n_a, cplx dx_a) {
  const double a2 = std::norm(dx_a);
  if (a2 == 0.0) throw std::invalid_argument("case1_term: dx_a must be nonzero");
  const double zeta1 = max_rayleigh_exp_mean(rho * a2 / 4.0, n_a) / 12.0;
  const double zeta2 = max_rayleigh_exp_mean(rho * a2 / 3.0, n_a) / 4.0;
  return zeta1 + zeta2;
}

double case2_term(double rho, int n_b, cplx dx_b) { return case1_term(rho, n_b, dx_b); }

double case3_term(double rho, int n_a, int n_b, cplx dx_a, cplx dx_b) {
  const double a2 = std::norm(dx_a);
  const double b2 = std::norm(dx_b);
  if (a2 == 0.0 || b2 == 0.0)
    throw std::invalid_argument("case3_term: both differences must be nonzero");
  const double xi1 = cross_exp_mean(rho * a2 / 4.0, rho * b2 / 4.0, n_a, n_b) / 12.0;
  const double xi2 = cross_exp_mean(rho * a2 / 3.0, rho * b2 / 3.0, n_a, n_b) / 4.0;
  return xi1 + xi2;
}

double tas1_ser_bound(double rho, int n_a, int n_b, const Constellation& c,
                      const PncMap& m) {
  if (rho <= 0.0) throw std::invalid_argument("tas1_ser_bound: rho must be positive");
  if (c.order() != m.order())
    throw std::invalid_argument("tas1_ser_bound: constellation and map order mismatch");
  if (!verify_exclusive_law(m))
    throw std::invalid_argument("tas1_ser_bound: map does not satisfy the exclusive law");
  const int M = c.order();
  double total = 0.0;
  // Single-coordinate confusions: the exclusive law makes these cross-cluster
  // automatically, and the other user's symbol is free (factor M).
  for (int sa = 0; sa < M; ++sa)
    for (int sa2 = 0; sa2 < M; ++sa2)
      if (sa2 != sa) total += M * case1_term(rho, n_a, c.point(sa) - c.point(sa2));
  for (int sb = 0; sb < M; ++sb)
    for (int sb2 = 0; sb2 < M; ++sb2)
      if (sb2 != sb) total += M * case2_term(rho, n_b, c.point(sb) - c.point(sb2));
  // Both coordinates differ: only cross-cluster pairs are error events.
  for (int sa = 0; sa < M; ++sa)
    for (int sb = 0; sb < M; ++sb)
      for (int sa2 = 0; sa2 < M; ++sa2) {
        if (sa2 == sa) continue;
        for (int sb2 = 0; sb2 < M; ++sb2) {
          if (sb2 == sb || m.map(sa, sb) == m.map(sa2, sb2)) continue;
          total += case3_term(rho, n_a, n_b, c.point(sa) - c.point(sa2),
                              c.point(sb) - c.point(sb2));
        }
      }
  return total / (static_cast<double>(M) * M);
}

double asymptotic_coeff(int n, int n_ant, cplx dx, ChianiTerm variant) {
  if (n < 1) throw std::invalid_argument("asymptotic_coeff: n must be >= 1");
  const double a2 = std::norm(dx);
  if (a2 == 0.0) throw std::invalid_argument("asymptotic_coeff: dx must be nonzero");
  const double scale = (variant == ChianiTerm::Quarter) ? 4.0 : 3.0;
  const double pref = (variant == ChianiTerm::Quarter) ? 1.0 / 12.0 : 0.25;
  double acc = 0.0;
  for (int k = 1; k <= n_ant; ++k)
    acc += binom(n_ant, k) * std::pow(scale * k / a2, n) * sign_pm(k + n);
  return pref * acc;
}

double asymptotic_coeff_case3(int m, int n_a, int n_b, cplx dx_a, cplx dx_b,
                              ChianiTerm variant) {
  if (m < 1) throw std::invalid_argument("asymptotic_coeff_case3: m must be >= 1");
  const double a2 = std::norm(dx_a);
  const double b2 = std::norm(dx_b);
  if (a2 == 0.0 || b2 == 0.0)
    throw std::invalid_argument("asymptotic_coeff_case3: differences must be nonzero");
  const double scale = (variant == ChianiTerm::Quarter) ? 4.0 : 3.0;
  const double pref = (variant == ChianiTerm::Quarter) ? 1.0 / 12.0 : 0.25;
  double acc = 0.0;
  for (int k = 1; k <= n_a; ++k)
    for (int l = 1; l <= n_b; ++l) {
      const double g = a2 / (scale * k) + b2 / (scale * l);
      acc += binom(n_a, k) * binom(n_b, l) * sign_pm(k + l + m - 3) * std::pow(g, -m);
    }
  return pref * acc;
}

DifferenceMatrixSet::DifferenceMatrixSet(
    int n_a, int n_b, std::vector<std::vector<Eigen::VectorXcd>> alphabets,
    EnumerationMode mode)
    : n_a_(n_a), n_b_(n_b), alphabets_(std::move(alphabets)), mode_(mode) {
  if (n_a_ < 1 || n_b_ < 1)
    throw std::invalid_argument("DifferenceMatrixSet: antenna counts must be >= 1");
  if (alphabets_.size() != static_cast<std::size_t>(n_a_) * n_b_)
    throw std::invalid_argument("DifferenceMatrixSet: one alphabet per combination required");
}

std::uint64_t DifferenceMatrixSet::family_size() const noexcept {
  std::uint64_t total = 1;
  for (const auto& alpha : alphabets_) {
    const std::uint64_t sz = alpha.size();
    if (sz != 0 && total > std::numeric_limits<std::uint64_t>::max() / sz)
      return std::numeric_limits<std::uint64_t>::max();
    total *= sz;
  }
  return total;
}

DifferenceMatrixSet build_difference_matrix_set(int n_a, int n_b,
                                                const Constellation& c,
                                                const PncMap& m,
                                                EnumerationMode mode) {
  const DiffPairTable table(c, m);
  const int rows = n_a + n_b;
  std::vector<std::vector<Eigen::VectorXcd>> alphabets;
  alphabets.reserve(static_cast<std::size_t>(n_a) * n_b);
  for (int i = 0; i < n_a; ++i)
    for (int j = 0; j < n_b; ++j) {
      std::vector<Eigen::VectorXcd> cols;
      cols.reserve(table.pairs().size());
      for (const DiffPair& p : table.pairs()) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(rows);
        v[i] = p.dx_a;
        v[n_a + j] = p.dx_b;
        cols.push_back(std::move(v));
      }
      alphabets.push_back(std::move(cols));
    }
  DifferenceMatrixSet dset(n_a, n_b, std::move(alphabets), mode);
  if (mode.kind == EnumerationMode::Kind::Exhaustive &&
      dset.family_size() > kMaxExhaustiveFamily)
    throw EnumerationTooLarge(
        "difference matrix family has " + std::to_string(dset.family_size()) +
        " members, above the exhaustive gate of " + std::to_string(kMaxExhaustiveFamily));
  return dset;
}

namespace {

constexpr double kRankRelTol = 1e-9;

void assemble(const DifferenceMatrixSet& dset, const std::vector<std::size_t>& pick,
              Eigen::MatrixXcd& x) {
  const auto& alphas = dset.column_alphabets();
  for (std::size_t k = 0; k < alphas.size(); ++k)
    x.col(static_cast<Eigen::Index>(k)) = alphas[k][pick[k]];
}

int numerical_rank(const Eigen::MatrixXcd& x) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(x);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  const double thresh = kRankRelTol * sv[0];
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] > thresh) ++r;
  return r;
}

double smallest_nonzero_eig(const Eigen::MatrixXcd& x) {
  const Eigen::MatrixXcd h = x * x.adjoint();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();  // ascending
  const double thresh = kRankRelTol * ev[ev.size() - 1];
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev[i] > thresh) return ev[i];
  return ev[ev.size() - 1];  // unreachable for nonzero x
}

// Odometer over the Cartesian product of column alphabets.
template <typename Fn>
void for_each_matrix(const DifferenceMatrixSet& dset, Fn&& fn) {
  const auto& alphas = dset.column_alphabets();
  std::vector<std::size_t> pick(alphas.size(), 0);
  Eigen::MatrixXcd x(dset.rows(), dset.combinations());
  for (;;) {
    assemble(dset, pick, x);
    fn(x);
    std::size_t k = 0;
    while (k < pick.size()) {
      if (++pick[k] < alphas[k].size()) break;
      pick[k] = 0;
      ++k;
    }
    if (k == pick.size()) return;
  }
}

}  // namespace

int r_min(const DifferenceMatrixSet& dset) {
  if (dset.mode().kind != EnumerationMode::Kind::Exhaustive)
    return std::min(dset.n_a(), dset.n_b());
  if (dset.family_size() > kMaxExhaustiveFamily)
    throw EnumerationTooLarge("r_min: family above the exhaustive gate");
  int best = dset.rows();
  for_each_matrix(dset, [&](const Eigen::MatrixXcd& x) {
    best = std::min(best, numerical_rank(x));
  });
  return best;
}

LambdaStar lambda_star(const DifferenceMatrixSet& dset) {
  const auto& alphas = dset.column_alphabets();
  if (dset.mode().kind == EnumerationMode::Kind::Exhaustive) {
    if (dset.family_size() > kMaxExhaustiveFamily)
      throw EnumerationTooLarge("lambda_star: family above the exhaustive gate");
    double best = std::numeric_limits<double>::infinity();
    for_each_matrix(dset, [&](const Eigen::MatrixXcd& x) {
      best = std::min(best, smallest_nonzero_eig(x));
    });
    return {best, true};
  }
  // Sampled: uniform over the product family; the result is an upper
  // estimate of the true minimum.
  const std::uint64_t samples =
      dset.mode().kind == EnumerationMode::Kind::Sampled ? dset.mode().samples : 1'000'000;
  rng::Engine eng = rng::make_stream(dset.mode().seed, 0x5a, 0x3b);
  std::vector<std::size_t> pick(alphas.size(), 0);
  Eigen::MatrixXcd x(dset.rows(), dset.combinations());
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (std::size_t k = 0; k < alphas.size(); ++k) {
      std::uniform_int_distribution<std::size_t> pickk(0, alphas[k].size() - 1);
      pick[k] = pickk(eng);
    }
    assemble(dset, pick, x);
    best = std::min(best, smallest_nonzero_eig(x));
  }
  return {best, false};
}

Tas2Bound tas2_ser_bound(double rho, int n_a, int n_b, int m_order,
                         double lambda_star_value) {
  if (rho <= 0.0) throw std::invalid_argument("tas2_ser_bound: rho must be positive");
  if (lambda_star_value <= 0.0)
    throw std::invalid_argument("tas2_ser_bound: lambda* must be positive");
  const int n = n_a * n_b;
  const double arg = rho * lambda_star_value / (4.0 * n);
  Tas2Bound out;
  out.lambda_star = lambda_star_value;
  out.r_min = std::min(n_a, n_b);
  out.high_snr_ok = arg >= 10.0;
  out.value = binom(m_order, 2) * std::pow(arg, -out.r_min);
  return out;
}

Tas2Bound tas2_ser_bound(double rho, const DifferenceMatrixSet& dset, int m_order) {
  return tas2_ser_bound(rho, dset.n_a(), dset.n_b(), m_order, lambda_star(dset).value);
}

}  // namespace pnc
