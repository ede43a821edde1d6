#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "pnc/constellation.hpp"
#include "pnc/types.hpp"

namespace pnc {

/// Two-exponential approximation of the Gaussian Q-function:
/// Q(x) ~= (1/12) e^{-x^2/2} + (1/4) e^{-2x^2/3}, x >= 0.
double chiani_q(double x);

/// Density of |h| after strongest-of-n selection over i.i.d. unit-variance
/// Rayleigh branches: sum_{k=1..n} C(n,k) (-1)^{k-1} 2k r e^{-k r^2}.
double order_stat_density(double r, int n);

/// CDF of the same: (1 - e^{-r^2})^n.
double order_stat_cdf(double r, int n);

/// E[exp(-s |h|^2)] under the strongest-of-n density. The alternating
/// binomial sum telescopes to the exact product  prod_{j=1..n} j / (j + s),
/// which is evaluated directly (no cancellation at any s).
double max_rayleigh_exp_mean(double s, int n);

/// E[exp(-|u|^2)] with u = sqrt(s_a) |h_A| e^{i phi_A} + sqrt(s_b) |h_B| e^{i phi_B},
/// phases uniform and |h_A|, |h_B| strongest-of-n_a / n_b Rayleigh:
///   sum_{k,l} C(n_a,k) C(n_b,l) (-1)^{k+l} / (1 + s_a/k + s_b/l).
/// The denominator is the expanded (cancellation-free) form of
/// Psi_a Psi_b - Theta/(4kl).
double cross_exp_mean(double s_a, double s_b, int n_a, int n_b);

/// Per-pair error-rate contributions under strongest-channel selection.
/// case1: only user A's symbol differs (dx_a != 0), zeta_1 + zeta_2.
/// case2: mirror image with user B.
/// case3: both differ and the pair is cross-cluster, xi_1 + xi_2.
double case1_term(double rho, int n_a, cplx dx_a);
double case2_term(double rho, int n_b, cplx dx_b);
double case3_term(double rho, int n_a, int n_b, cplx dx_a, cplx dx_b);

/// Union-style SER bound for strongest-channel selection (TAS1) at linear
/// SNR rho = Es/N0: (1/M^2) [sum case1 + sum case2 + sum_{cross-cluster} case3].
double tas1_ser_bound(double rho, int n_a, int n_b, const Constellation& c,
                      const PncMap& m);

/// Which exponential branch of the Q-function approximation a coefficient
/// belongs to: Quarter is the (1/12) e^{-x^2/2} branch (|dx|^2/4 scaling),
/// Third is the (1/4) e^{-2x^2/3} branch (|dx|^2/3 scaling).
enum class ChianiTerm { Quarter, Third };

/// High-SNR expansion coefficient of zeta_1 (Quarter) or zeta_2 (Third):
/// zeta = sum_{n>=n_ant} coeff(n) rho^{-n}; coeff(n) = 0 for n < n_ant.
double asymptotic_coeff(int n, int n_ant, cplx dx, ChianiTerm variant);

/// Case-3 analogue for xi_1 / xi_2: B_{-m} with g(k,l) = |dx_a|^2/(4k) + |dx_b|^2/(4l)
/// (Quarter) or the /3 version (Third).
double asymptotic_coeff_case3(int m, int n_a, int n_b, cplx dx_a, cplx dx_b,
                              ChianiTerm variant);

struct EnumerationMode {
  enum class Kind { Exhaustive, Sampled, AnalyticRmin };

  Kind kind = Kind::Exhaustive;
  std::uint64_t samples = 1'000'000;  // Sampled only
  std::uint64_t seed = 0x9d2c5680;    // Sampled only

  static EnumerationMode exhaustive() { return {Kind::Exhaustive, 0, 0}; }
  static EnumerationMode sampled(std::uint64_t count, std::uint64_t seed = 0x9d2c5680) {
    return {Kind::Sampled, count, seed};
  }
  static EnumerationMode analytic_rmin() { return {Kind::AnalyticRmin, 0, 0}; }
};

/// Per antenna combination I = (i, j), the deduplicated set of cross-cluster
/// difference vectors embedded at rows (i, n_a + j); the Cartesian-product
/// matrix family over combinations is enumerated lazily.
class DifferenceMatrixSet {
 public:
  DifferenceMatrixSet(int n_a, int n_b,
                      std::vector<std::vector<Eigen::VectorXcd>> alphabets,
                      EnumerationMode mode);

  int n_a() const noexcept { return n_a_; }
  int n_b() const noexcept { return n_b_; }
  int rows() const noexcept { return n_a_ + n_b_; }
  int combinations() const noexcept { return n_a_ * n_b_; }

  /// Column alphabets in row-major combination order (i * n_b + j).
  const std::vector<std::vector<Eigen::VectorXcd>>& column_alphabets() const noexcept {
    return alphabets_;
  }

  /// Number of matrices in the family (saturates at uint64 max).
  std::uint64_t family_size() const noexcept;

  const EnumerationMode& mode() const noexcept { return mode_; }

 private:
  int n_a_;
  int n_b_;
  std::vector<std::vector<Eigen::VectorXcd>> alphabets_;
  EnumerationMode mode_;
};

/// Gate for exhaustive enumeration; beyond this, sampled mode is required.
inline constexpr std::uint64_t kMaxExhaustiveFamily = 10'000'000;

DifferenceMatrixSet build_difference_matrix_set(
    int n_a, int n_b, const Constellation& c, const PncMap& m,
    EnumerationMode mode = EnumerationMode::exhaustive());

/// Minimum rank over the family. Exhaustive mode scans every matrix
/// (numerical rank, singular values below 1e-9 of the largest treated as
/// zero); other modes return the analytic value min(n_a, n_b).
int r_min(const DifferenceMatrixSet& dset);

struct LambdaStar {
  double value = 0.0;
  bool exact = false;  // sampled estimates can only overshoot the true minimum
};

/// Minimum over the family of the smallest nonzero eigenvalue of X X^H
/// (eigenvalues below 1e-9 of the largest treated as zero).
LambdaStar lambda_star(const DifferenceMatrixSet& dset);

struct Tas2Bound {
  double value = 0.0;
  double lambda_star = 0.0;
  int r_min = 0;
  bool high_snr_ok = true;  // rho * lambda / (4n) >= 10
};

/// High-SNR SER bound for the distance-based selection rule:
/// C(M,2) * (rho * lambda / (4 n))^{-min(n_a, n_b)} with n = n_a * n_b.
Tas2Bound tas2_ser_bound(double rho, int n_a, int n_b, int m_order,
                         double lambda_star_value);
Tas2Bound tas2_ser_bound(double rho, const DifferenceMatrixSet& dset, int m_order);

}  // namespace pnc
