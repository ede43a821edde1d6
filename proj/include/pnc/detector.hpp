#pragma once

#include <vector>

#include "pnc/channel.hpp"
#include "pnc/constellation.hpp"

namespace pnc {

struct DetectionResult {
  int est_a = 0;
  int est_b = 0;
  double metric = 0.0;  // |y - sqrt(Es) h_a x_a - sqrt(Es) h_b x_b| at the minimizer
};

/// Exhaustive ML detection of the transmitted symbol pair over all M^2
/// candidates. The noise-free candidate table depends only on the channel,
/// which is frame-constant, so construct once per frame and reuse.
class JointDetector {
 public:
  JointDetector(cplx h_a, cplx h_b, const NoisePower& np, const Constellation& c);

  /// Ties break to the lexicographically smallest (est_a, est_b).
  DetectionResult detect(cplx y) const;

  int order() const noexcept { return m_; }

 private:
  int m_;
  std::vector<cplx> table_;  // index s_a * M + s_b
};

DetectionResult ml_joint_detect(cplx y, cplx h_a, cplx h_b, const NoisePower& np,
                                const Constellation& c);

/// The error event counted at the end of the multiple-access phase: the
/// detected pair lands in a different cluster than the transmitted pair.
/// Wrong pairs inside the same cluster are not errors.
bool is_cluster_error(int tx_a, int tx_b, const DetectionResult& det,
                      const PncMap& m);

}  // namespace pnc
