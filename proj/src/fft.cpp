#include "voctk/fft.hpp"

#include <cmath>
#include <cstdint>

#include "voctk/common.hpp"

namespace voctk {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

// In-place iterative radix-2 Cooley-Tukey; n must be a power of two.
void fft_pow2(std::vector<cdouble>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n <= 1) return;

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * kPi / static_cast<double>(len);
        const cdouble wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cdouble w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                cdouble u = a[i + j];
                cdouble v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

// Bluestein's algorithm: expresses a length-N DFT as a circular convolution
// of length >= 2N-1, evaluated with power-of-two FFTs. Quadratic phases use
// n^2 mod 2N to keep the angle argument small.
std::vector<cdouble> fft_bluestein(const std::vector<cdouble>& x) {
    const std::size_t n = x.size();
    const std::uint64_t two_n = 2 * static_cast<std::uint64_t>(n);
    const std::size_t m = next_pow2(2 * n - 1);

    std::vector<cdouble> chirp(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t sq = (static_cast<std::uint64_t>(i) * i) % two_n;
        double ang = kPi * static_cast<double>(sq) / static_cast<double>(n);
        chirp[i] = cdouble(std::cos(ang), -std::sin(ang));
    }

    std::vector<cdouble> a(m, cdouble(0, 0)), b(m, cdouble(0, 0));
    for (std::size_t i = 0; i < n; ++i) a[i] = x[i] * chirp[i];
    b[0] = std::conj(chirp[0]);
    for (std::size_t i = 1; i < n; ++i) b[i] = b[m - i] = std::conj(chirp[i]);

    fft_pow2(a, false);
    fft_pow2(b, false);
    for (std::size_t i = 0; i < m; ++i) a[i] *= b[i];
    fft_pow2(a, true);

    std::vector<cdouble> out(n);
    const double scale = 1.0 / static_cast<double>(m);
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * scale * chirp[i];
    return out;
}

} // namespace

std::vector<cdouble> fft(std::vector<cdouble> x) {
    if (x.empty()) throw validation_error("fft: empty input");
    if (is_pow2(x.size())) {
        fft_pow2(x, false);
        return x;
    }
    return fft_bluestein(x);
}

std::vector<cdouble> ifft(std::vector<cdouble> x) {
    if (x.empty()) throw validation_error("ifft: empty input");
    const std::size_t n = x.size();
    if (is_pow2(n)) {
        fft_pow2(x, true);
        for (auto& v : x) v /= static_cast<double>(n);
        return x;
    }
    for (auto& v : x) v = std::conj(v);
    x = fft_bluestein(x);
    for (auto& v : x) v = std::conj(v) / static_cast<double>(n);
    return x;
}

std::vector<cdouble> fft_real(const std::vector<double>& x) {
    std::vector<cdouble> c(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) c[i] = cdouble(x[i], 0.0);
    return fft(std::move(c));
}

} // namespace voctk
