#include "pnc/detector.hpp"

#include <cmath>
#include <limits>

namespace pnc {

JointDetector::JointDetector(cplx h_a, cplx h_b, const NoisePower& np,
                             const Constellation& c)
    : m_(c.order()), table_(static_cast<std::size_t>(m_) * m_) {
  const double amp = std::sqrt(np.es);
  for (int a = 0; a < m_; ++a) {
    const cplx ta = amp * h_a * c.point(a);
    for (int b = 0; b < m_; ++b)
      table_[static_cast<std::size_t>(a) * m_ + b] = ta + amp * h_b * c.point(b);
  }
}

DetectionResult JointDetector::detect(cplx y) const {
  int best = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  const int n = m_ * m_;
  for (int i = 0; i < n; ++i) {
    const double d2 = std::norm(y - table_[static_cast<std::size_t>(i)]);
    if (d2 < best_d2) {  // strict: first (lexicographically lowest) index wins ties
      best_d2 = d2;
      best = i;
    }
  }
  return {best / m_, best % m_, std::sqrt(best_d2)};
}

DetectionResult ml_joint_detect(cplx y, cplx h_a, cplx h_b, const NoisePower& np,
                                const Constellation& c) {
  return JointDetector(h_a, h_b, np, c).detect(y);
}

bool is_cluster_error(int tx_a, int tx_b, const DetectionResult& det,
                      const PncMap& m) {
  return m.map(det.est_a, det.est_b) != m.map(tx_a, tx_b);
}

}  // namespace pnc
