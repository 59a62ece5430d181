// Minimal complex DFT: iterative radix-2 for power-of-two lengths plus a
// Bluestein chirp transform for everything else. Sequence lengths here are
// a few thousand samples at most, so this stays simple and allocation-based.

#pragma once

#include <complex>
#include <vector>

namespace uavloc {

using cplx = std::complex<double>;

// Forward DFT, no normalization: X(k) = sum_n x(n) exp(-j 2 pi k n / N).
std::vector<cplx> dft(const std::vector<cplx>& x);

// Inverse DFT with 1/N normalization.
std::vector<cplx> idft(const std::vector<cplx>& x);

}  // namespace uavloc
