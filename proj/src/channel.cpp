#include "pnc/channel.hpp"

#include <stdexcept>

namespace pnc {

NoisePower NoisePower::from_snr_db(double snr_db, double es) {
  if (es <= 0.0) throw std::invalid_argument("NoisePower: es must be positive");
  NoisePower np;
  np.es = es;
  np.n0 = es * std::pow(10.0, -snr_db / 10.0);
  return np;
}

double NoisePower::snr_db() const { return 10.0 * std::log10(es / n0); }

cplx draw_cn(rng::Engine& rng, double variance) {
  std::normal_distribution<double> g(0.0, std::sqrt(variance * 0.5));
  const double re = g(rng);
  const double im = g(rng);
  return cplx(re, im);
}

ChannelRealization draw_channel(rng::Engine& rng, int n_a, int n_b) {
  if (n_a < 1 || n_b < 1)
    throw std::invalid_argument("draw_channel: antenna counts must be >= 1");
  ChannelRealization ch;
  ch.coeffs_a.resize(n_a);
  ch.coeffs_b.resize(n_b);
  for (int i = 0; i < n_a; ++i) ch.coeffs_a[i] = draw_cn(rng, 1.0);
  for (int j = 0; j < n_b; ++j) ch.coeffs_b[j] = draw_cn(rng, 1.0);
  return ch;
}

}  // namespace pnc
