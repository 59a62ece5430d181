// Zadoff-Chu reference sequences and time-of-flight estimation via upsampled
// circular cross-correlation.
//
// The correlation is computed in the frequency domain; the product spectrum
// is zero-padded to K*N bins before the inverse transform, which interpolates
// the correlation K-fold (band-limited interpolation) and refines the delay
// grid to 1/K of a base-rate sample.

#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "uavloc/channel.hpp"  // kSpeedOfLight
#include "uavloc/fft.hpp"
#include "uavloc/rng.hpp"

namespace uavloc {

struct ZcSequence {
    int root_q = 0;
    int n_zc = 0;
    std::vector<cplx> samples;  // unit magnitude by construction
};

struct RangingConfig {
    double sample_rate_hz = 30.72e6;
    int upsample_k = 4;
    int n_zc = 839;

    void validate() const;
};

struct ToFEstimate {
    double delay_samples = 0.0;     // fractional, base-rate samples, in [0, N)
    double delay_seconds = 0.0;
    double range_meters = 0.0;
    double peak_magnitude = 0.0;
    double peak_to_sidelobe = 0.0;  // peak over max beyond +-1 base sample
};

class NoPeakError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// samples[n] = exp(-j 2 pi q (n(n+1)/2) / N), n = 0..N-1. N odd, 1 <= q < N.
ZcSequence gen_zc(int root_q, int n_zc);

// sum_n x(n) conj(x((n+lag) mod N)); magnitude N at lag 0 and ~0 elsewhere
// whenever gcd(q, N) = 1.
cplx circ_autocorr(const ZcSequence& seq, int lag);

// Upsampled circular cross-correlation, 1/N normalized so a perfect aligned
// match peaks at magnitude N. Output length is K * N; index m corresponds to
// a delay of m/K base-rate samples.
std::vector<cplx> circ_xcorr_upsampled(const std::vector<cplx>& known,
                                       const std::vector<cplx>& received, int upsample_k);

ToFEstimate estimate_tof(const ZcSequence& known, const std::vector<cplx>& received,
                         const RangingConfig& cfg);

// c / (sample_rate * K), meters per correlation grid step.
double range_resolution(const RangingConfig& cfg);

// Circular fractional delay via a frequency-domain phase ramp over signed
// frequencies; integer delays reduce to an exact circular shift.
std::vector<cplx> apply_fractional_delay(const std::vector<cplx>& signal, double delay_samples);

// Complex circular Gaussian noise; SNR is mean signal power over noise power.
void add_awgn(std::vector<cplx>& signal, double snr_db, Rng& rng);

}  // namespace uavloc
