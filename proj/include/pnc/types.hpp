#pragma once

#include <complex>

namespace pnc {

using cplx = std::complex<double>;

}  // namespace pnc
