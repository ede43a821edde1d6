#pragma once

#include <Eigen/Core>
#include <cmath>

#include "pnc/rng.hpp"
#include "pnc/types.hpp"

namespace pnc {

/// One fading frame: i.i.d. CN(0,1) gains from every user antenna to the relay.
struct ChannelRealization {
  Eigen::VectorXcd coeffs_a;
  Eigen::VectorXcd coeffs_b;
};

struct NoisePower {
  double es = 1.0;  // symbol energy, linear
  double n0 = 1.0;  // noise spectral density, linear

  static NoisePower from_snr_db(double snr_db, double es = 1.0);
  double snr_db() const;
};

/// One CN(0, variance) draw: independent real/imag parts of variance/2 each.
cplx draw_cn(rng::Engine& rng, double variance);

/// n_a + n_b fresh CN(0,1) coefficients. Draw order is fixed (all of user A,
/// then user B) so a given engine state always yields the same realization.
ChannelRealization draw_channel(rng::Engine& rng, int n_a, int n_b);

/// y = sqrt(Es) h_a x_a + sqrt(Es) h_b x_b + n
inline cplx received_signal(cplx h_a, cplx h_b, cplx x_a, cplx x_b, cplx noise,
                            const NoisePower& np) {
  const double amp = std::sqrt(np.es);
  return amp * (h_a * x_a) + amp * (h_b * x_b) + noise;
}

}  // namespace pnc
