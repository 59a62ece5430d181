#include "uavloc/ranging.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace uavloc {

void RangingConfig::validate() const {
    if (!(sample_rate_hz > 0.0)) throw std::invalid_argument("ranging: sample rate must be > 0");
    if (upsample_k < 1) throw std::invalid_argument("ranging: upsample factor must be >= 1");
    if (n_zc < 3 || n_zc % 2 == 0) throw std::invalid_argument("ranging: n_zc must be odd and >= 3");
}

ZcSequence gen_zc(int root_q, int n_zc) {
    if (n_zc < 3 || n_zc % 2 == 0)
        throw std::invalid_argument("gen_zc: sequence length must be odd and >= 3");
    if (root_q < 1 || root_q >= n_zc)
        throw std::invalid_argument("gen_zc: root must be in {1, ..., N-1}");
    ZcSequence seq;
    seq.root_q = root_q;
    seq.n_zc = n_zc;
    seq.samples.resize(static_cast<std::size_t>(n_zc));
    const long long n_ll = n_zc;
    for (long long n = 0; n < n_ll; ++n) {
        // Phase argument reduced mod N before the multiply so the angle stays
        // small and the samples keep unit magnitude to full precision.
        const long long tri = (n * (n + 1) / 2) % n_ll;
        const long long m = (tri * root_q) % n_ll;
        const double ang = -2.0 * M_PI * static_cast<double>(m) / static_cast<double>(n_ll);
        seq.samples[static_cast<std::size_t>(n)] = cplx(std::cos(ang), std::sin(ang));
    }
    return seq;
}

cplx circ_autocorr(const ZcSequence& seq, int lag) {
    if (lag < 0 || lag >= seq.n_zc) throw std::invalid_argument("circ_autocorr: lag out of range");
    const int n = seq.n_zc;
    cplx acc(0.0, 0.0);
    for (int i = 0; i < n; ++i) acc += seq.samples[i] * std::conj(seq.samples[(i + lag) % n]);
    return acc;
}

std::vector<cplx> circ_xcorr_upsampled(const std::vector<cplx>& known,
                                       const std::vector<cplx>& received, int upsample_k) {
    if (known.size() != received.size())
        throw std::invalid_argument("circ_xcorr: length mismatch");
    if (upsample_k < 1) throw std::invalid_argument("circ_xcorr: upsample factor must be >= 1");
    const std::size_t n = known.size();
    const std::vector<cplx> x = dft(known);
    const std::vector<cplx> y = dft(received);

    // Y(k) conj(X(k)) puts the correlation peak at the delay of the received
    // copy relative to the reference.
    std::vector<cplx> prod(n);
    for (std::size_t k = 0; k < n; ++k) prod[k] = y[k] * std::conj(x[k]);

    if (upsample_k == 1) {
        std::vector<cplx> corr = idft(prod);
        return corr;  // idft already applies 1/N
    }

    // Zero-pad the spectrum keeping signed frequencies in place; the
    // inverse transform then evaluates the band-limited correlation on a
    // K-times finer grid.
    const std::size_t m = n * static_cast<std::size_t>(upsample_k);
    std::vector<cplx> padded(m, cplx(0.0, 0.0));
    for (std::size_t k = 0; k < n; ++k) {
        if (k <= n / 2)
            padded[k] = prod[k];
        else
            padded[m - n + k] = prod[k];
    }
    if (n % 2 == 0) {  // split the Nyquist bin
        padded[n / 2] *= 0.5;
        padded[m - n / 2] = padded[n / 2];
    }
    std::vector<cplx> corr = idft(padded);
    const double scale = static_cast<double>(upsample_k);  // 1/N instead of 1/M
    for (cplx& v : corr) v *= scale;
    return corr;
}

ToFEstimate estimate_tof(const ZcSequence& known, const std::vector<cplx>& received,
                         const RangingConfig& cfg) {
    cfg.validate();
    if (static_cast<int>(received.size()) != known.n_zc)
        throw std::invalid_argument("estimate_tof: received length must equal n_zc");
    double power = 0.0;
    for (const cplx& v : received) power += std::norm(v);
    if (power == 0.0) throw NoPeakError("estimate_tof: all-zero received signal");

    const std::vector<cplx> corr =
        circ_xcorr_upsampled(known.samples, received, cfg.upsample_k);
    const std::size_t m = corr.size();
    std::size_t peak = 0;
    double peak_mag = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double mag = std::abs(corr[i]);
        if (mag > peak_mag) {
            peak_mag = mag;
            peak = i;
        }
    }
    if (peak_mag == 0.0) throw NoPeakError("estimate_tof: flat correlation");

    // Sidelobe level outside +-1 base-rate sample around the peak.
    const std::size_t guard = static_cast<std::size_t>(cfg.upsample_k);
    double side = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t d = i > peak ? i - peak : peak - i;
        d = std::min(d, m - d);  // circular distance
        if (d <= guard) continue;
        side = std::max(side, std::abs(corr[i]));
    }

    ToFEstimate est;
    est.delay_samples = static_cast<double>(peak) / cfg.upsample_k;
    est.delay_seconds = est.delay_samples / cfg.sample_rate_hz;
    est.range_meters = kSpeedOfLight * est.delay_seconds;
    est.peak_magnitude = peak_mag;
    est.peak_to_sidelobe =
        side > 0.0 ? peak_mag / side : std::numeric_limits<double>::infinity();
    return est;
}

double range_resolution(const RangingConfig& cfg) {
    cfg.validate();
    return kSpeedOfLight / (cfg.sample_rate_hz * cfg.upsample_k);
}

std::vector<cplx> apply_fractional_delay(const std::vector<cplx>& signal, double delay_samples) {
    const std::size_t n = signal.size();
    if (n == 0) throw std::invalid_argument("apply_fractional_delay: empty signal");
    std::vector<cplx> spec = dft(signal);
    for (std::size_t k = 0; k < n; ++k) {
        const double f = k <= n / 2 ? static_cast<double>(k)
                                    : static_cast<double>(k) - static_cast<double>(n);
        const double ang = -2.0 * M_PI * f * delay_samples / static_cast<double>(n);
        spec[k] *= cplx(std::cos(ang), std::sin(ang));
    }
    return idft(spec);
}

void add_awgn(std::vector<cplx>& signal, double snr_db, Rng& rng) {
    if (signal.empty()) return;
    double power = 0.0;
    for (const cplx& v : signal) power += std::norm(v);
    power /= static_cast<double>(signal.size());
    const double noise_var = power * std::pow(10.0, -snr_db / 10.0);
    const double comp_std = std::sqrt(noise_var / 2.0);
    for (cplx& v : signal) v += cplx(rng.normal(0.0, comp_std), rng.normal(0.0, comp_std));
}

}  // namespace uavloc
