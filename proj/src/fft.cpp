#include "uavloc/fft.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace uavloc {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

// In-place iterative radix-2 Cooley-Tukey. sign = -1 forward, +1 inverse
// (no normalization here).
void fft_pow2(std::vector<cplx>& a, int sign) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * M_PI / static_cast<double>(len);
        const cplx wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cplx u = a[i + k];
                const cplx v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

// Bluestein: express an arbitrary-length DFT as a convolution, evaluated with
// a power-of-two FFT. Chirp phases are reduced mod 2N before calling exp so
// unit magnitude survives large indices.
std::vector<cplx> bluestein(const std::vector<cplx>& x, int sign) {
    const std::size_t n = x.size();
    std::vector<cplx> chirp(n);
    for (std::size_t i = 0; i < n; ++i) {
        const unsigned long long sq = (static_cast<unsigned long long>(i) * i) % (2 * n);
        const double ang = sign * M_PI * static_cast<double>(sq) / static_cast<double>(n);
        chirp[i] = cplx(std::cos(ang), std::sin(ang));
    }
    const std::size_t m = next_pow2(2 * n - 1);
    std::vector<cplx> a(m, cplx(0.0, 0.0)), b(m, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < n; ++i) a[i] = x[i] * chirp[i];
    for (std::size_t i = 0; i < n; ++i) {
        b[i] = std::conj(chirp[i]);
        if (i != 0) b[m - i] = std::conj(chirp[i]);
    }
    fft_pow2(a, -1);
    fft_pow2(b, -1);
    for (std::size_t i = 0; i < m; ++i) a[i] *= b[i];
    fft_pow2(a, +1);
    std::vector<cplx> out(n);
    const double inv_m = 1.0 / static_cast<double>(m);
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * inv_m * chirp[i];
    return out;
}

std::vector<cplx> transform(const std::vector<cplx>& x, int sign) {
    if (x.empty()) throw std::invalid_argument("dft: empty input");
    if (is_pow2(x.size())) {
        std::vector<cplx> a = x;
        fft_pow2(a, sign);
        return a;
    }
    return bluestein(x, sign);
}

}  // namespace

std::vector<cplx> dft(const std::vector<cplx>& x) { return transform(x, -1); }

std::vector<cplx> idft(const std::vector<cplx>& x) {
    std::vector<cplx> out = transform(x, +1);
    const double inv_n = 1.0 / static_cast<double>(x.size());
    for (cplx& v : out) v *= inv_n;
    return out;
}

}  // namespace uavloc
