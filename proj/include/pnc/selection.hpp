#pragma once

#include <vector>

#include "pnc/channel.hpp"
#include "pnc/constellation.hpp"

namespace pnc {

/// Selected transmit antenna per user, with the corresponding coefficients.
struct AntennaChoice {
  int idx_a = 0;
  int idx_b = 0;
  cplx h_a;
  cplx h_b;
};

struct DiffPair {
  cplx dx_a;
  cplx dx_b;
};

/// Symbol-pair difference vectors (x_a - x_a', x_b - x_b') over ordered pairs
/// that belong to different clusters, deduplicated. Same-cluster pairs carry
/// no error event and are excluded. Immutable after construction; build once
/// per (constellation, map) and share.
class DiffPairTable {
 public:
  DiffPairTable(const Constellation& c, const PncMap& m);

  const std::vector<DiffPair>& pairs() const noexcept { return pairs_; }

  /// min over cross-cluster pairs of |h_a dx_a + h_b dx_b|^2
  double min_distance(cplx h_a, cplx h_b) const;

 private:
  std::vector<DiffPair> pairs_;
};

/// Strongest-channel rule: per user, the index maximizing |h|^2.
/// Ties break to the lowest index.
AntennaChoice tas1_select(const ChannelRealization& ch);

double min_cluster_distance(cplx h_a, cplx h_b, const DiffPairTable& table);
double min_cluster_distance(cplx h_a, cplx h_b, const Constellation& c,
                            const PncMap& m);

/// Euclidean-distance rule: the antenna combination maximizing the minimum
/// inter-cluster distance at the relay. Ties break to the lexicographically
/// smallest (idx_a, idx_b).
AntennaChoice tas2_select(const ChannelRealization& ch, const DiffPairTable& table);
AntennaChoice tas2_select(const ChannelRealization& ch, const Constellation& c,
                          const PncMap& m);

}  // namespace pnc
