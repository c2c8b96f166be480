#include "voctk/activations.hpp"

#include <cmath>

namespace voctk {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double snake(double x, double alpha) {
    if (!(alpha > 0.0)) throw validation_error("snake: alpha must be positive");
    const double s = std::sin(alpha * x);
    return x + s * s / alpha;
}

double snake_derivative(double x, double alpha) {
    if (!(alpha > 0.0)) throw validation_error("snake_derivative: alpha must be positive");
    return 1.0 + std::sin(2.0 * alpha * x);
}

double snakebeta(double x, double alpha, double beta) {
    if (!(alpha > 0.0 && beta > 0.0))
        throw validation_error("snakebeta: alpha and beta must be positive");
    const double s = std::sin(alpha * x);
    return x + s * s / beta;
}

double snakebeta_dx(double x, double alpha, double beta) {
    if (!(alpha > 0.0 && beta > 0.0))
        throw validation_error("snakebeta_dx: alpha and beta must be positive");
    return 1.0 + (alpha / beta) * std::sin(2.0 * alpha * x);
}

double snakebeta_dalpha(double x, double alpha, double beta) {
    if (!(alpha > 0.0 && beta > 0.0))
        throw validation_error("snakebeta_dalpha: alpha and beta must be positive");
    return x * std::sin(2.0 * alpha * x) / beta;
}

double snakebeta_dbeta(double x, double alpha, double beta) {
    if (!(alpha > 0.0 && beta > 0.0))
        throw validation_error("snakebeta_dbeta: alpha and beta must be positive");
    const double s = std::sin(alpha * x);
    return -s * s / (beta * beta);
}

double leaky_relu(double x, LeakySlope slope) {
    if (!(slope.beta_slope > 0.0 && slope.beta_slope < 1.0))
        throw validation_error("leaky_relu: slope must lie in (0, 1)");
    return x >= 0.0 ? x : slope.beta_slope * x;
}

double leaky_relu_derivative(double x, LeakySlope slope) {
    if (!(slope.beta_slope > 0.0 && slope.beta_slope < 1.0))
        throw validation_error("leaky_relu_derivative: slope must lie in (0, 1)");
    return x >= 0.0 ? 1.0 : slope.beta_slope;
}

double SnakeParams::alpha_at(std::size_t c) const {
    double v = alpha.at(c);
    return logscale ? std::exp(v) : v;
}

double SnakeParams::beta_at(std::size_t c) const {
    double v = beta.at(c);
    return logscale ? std::exp(v) : v;
}

namespace detail {

float fast_sin(float x) {
    // One-step range reduction to [-pi, pi], then an odd degree-13
    // polynomial (max error ~7e-7 in float).
    constexpr float kTwoPi = 6.28318530717958648f;
    constexpr float kInvTwoPi = 0.159154943091895336f;
    float r = x - kTwoPi * std::floor(x * kInvTwoPi + 0.5f);
    const float r2 = r * r;
    float p = 1.34499859940420789e-10f;
    p = p * r2 - 2.46764917448649116e-08f;
    p = p * r2 + 2.75293952552918558e-06f;
    p = p * r2 - 1.98401518681355285e-04f;
    p = p * r2 + 8.33331029299607881e-03f;
    p = p * r2 - 1.66666645699198868e-01f;
    p = p * r2 + 9.99999994459799035e-01f;
    return p * r;
}

void snake_row(float* x, std::size_t n, float alpha, float inv_beta) {
    for (std::size_t i = 0; i < n; ++i) {
        const float s = fast_sin(alpha * x[i]);
        x[i] += inv_beta * s * s;
    }
}

namespace {

double bessel_i0(double x) {
    double sum = 1.0, term = 1.0;
    const double half_sq = (x / 2.0) * (x / 2.0);
    for (int k = 1; k < 64; ++k) {
        term *= half_sq / (static_cast<double>(k) * k);
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return sum;
}

std::vector<float> make_resample_kernel() {
    // 24 taps at the upsampled rate (12 per phase), cutoff 0.25 cycles per
    // upsampled sample, Kaiser window for ~80 dB stopband.
    constexpr int taps = 2 * kResampleTapsPerPhase;
    constexpr double cutoff = 0.25;
    const double beta = 0.1102 * (80.0 - 8.7);
    const double center = (taps - 1) / 2.0;
    const double i0b = bessel_i0(beta);

    std::vector<double> h(taps);
    double sum = 0.0;
    for (int j = 0; j < taps; ++j) {
        const double t = j - center;
        const double sinc = (t == 0.0) ? 1.0 : std::sin(2.0 * kPi * cutoff * t) / (2.0 * kPi * cutoff * t);
        const double frac = t / center;
        const double w = bessel_i0(beta * std::sqrt(std::max(0.0, 1.0 - frac * frac))) / i0b;
        h[static_cast<std::size_t>(j)] = 2.0 * cutoff * sinc * w;
        sum += h[static_cast<std::size_t>(j)];
    }
    std::vector<float> out(taps);
    for (int j = 0; j < taps; ++j)
        out[static_cast<std::size_t>(j)] = static_cast<float>(h[static_cast<std::size_t>(j)] / sum);
    return out;
}

// Replicate-pad a row by kResampleTapsPerPhase/2 samples each side.
void pad_replicate(const float* src, std::size_t n, std::vector<float>& dst) {
    constexpr std::size_t p = kResampleTapsPerPhase / 2;
    dst.resize(n + 2 * p);
    for (std::size_t i = 0; i < p; ++i) dst[i] = src[0];
    for (std::size_t i = 0; i < n; ++i) dst[p + i] = src[i];
    for (std::size_t i = 0; i < p; ++i) dst[p + n + i] = src[n - 1];
}

} // namespace

const std::vector<float>& resample_kernel() {
    static const std::vector<float> kernel = make_resample_kernel();
    return kernel;
}

MatrixF antialiased_apply(const MatrixF& x, const SnakeParams& params, Activation kind) {
    const std::size_t C = x.rows, T = x.cols;
    if (T == 0) throw validation_error("antialiased activation: empty input");
    if (kind != Activation::leaky_relu && params.alpha.size() < C)
        throw validation_error("antialiased activation: missing per-channel alpha");

    const auto& h = resample_kernel();
    constexpr int P = kResampleTapsPerPhase; // taps per phase
    constexpr std::size_t pad = P / 2;

    MatrixF out(C, T);
    std::vector<float> xp, ye(T), yo(T), yep, yop;
    for (std::size_t c = 0; c < C; ++c) {
        pad_replicate(x.row(c), T, xp);
        const float* xc = xp.data() + pad; // xc[i] valid for i in [-pad, T+pad)

        // 2x interpolation, split by output parity, as contiguous AXPY
        // passes per tap. Offsets chosen so the up/down cascade has zero net
        // delay (group delays sum to an integer).
        std::fill(ye.begin(), ye.end(), 0.0f);
        std::fill(yo.begin(), yo.end(), 0.0f);
        for (int m = 0; m < P; ++m) {
            const float we = 2.0f * h[static_cast<std::size_t>(2 * m + 1)];
            const float wo = 2.0f * h[static_cast<std::size_t>(2 * m)];
            const float* be = xc + 5 - m;
            const float* bo = xc + 6 - m;
            for (std::size_t q = 0; q < T; ++q) ye[q] += we * be[q];
            for (std::size_t q = 0; q < T; ++q) yo[q] += wo * bo[q];
        }

        if (kind == Activation::leaky_relu) {
            for (std::size_t q = 0; q < T; ++q) {
                ye[q] = ye[q] >= 0.0f ? ye[q] : 0.1f * ye[q];
                yo[q] = yo[q] >= 0.0f ? yo[q] : 0.1f * yo[q];
            }
        } else {
            const float alpha = static_cast<float>(params.alpha_at(c));
            const float inv_beta = (kind == Activation::snakebeta)
                                       ? 1.0f / static_cast<float>(params.beta_at(c))
                                       : 1.0f / alpha;
            snake_row(ye.data(), T, alpha, inv_beta);
            snake_row(yo.data(), T, alpha, inv_beta);
        }

        pad_replicate(ye.data(), T, yep);
        pad_replicate(yo.data(), T, yop);
        const float* pe = yep.data() + pad;
        const float* po = yop.data() + pad;
        float* dst = out.row(c);
        std::fill(dst, dst + T, 0.0f);
        for (int m = 0; m < P; ++m) {
            const float we = h[static_cast<std::size_t>(2 * m)];
            const float wo = h[static_cast<std::size_t>(2 * m + 1)];
            const float* be = pe + 6 - m;
            const float* bo = po + 5 - m;
            for (std::size_t t = 0; t < T; ++t) dst[t] += we * be[t] + wo * bo[t];
        }
    }
    return out;
}

} // namespace detail

MatrixF antialiased_activation(const MatrixF& x, const SnakeParams& params, Activation kind) {
    if (kind == Activation::leaky_relu)
        throw validation_error("antialiased_activation: kind must be snake or snakebeta");
    if (x.cols < static_cast<std::size_t>(kResampleTapsPerPhase))
        throw validation_error("antialiased_activation: input shorter than the filter support (" +
                               std::to_string(kResampleTapsPerPhase) + " samples)");
    for (std::size_t c = 0; c < x.rows; ++c) {
        if (!(params.alpha_at(c) > 0.0))
            throw validation_error("antialiased_activation: alpha must be positive");
        if (kind == Activation::snakebeta && !(params.beta_at(c) > 0.0))
            throw validation_error("antialiased_activation: beta must be positive");
    }
    return detail::antialiased_apply(x, params, kind);
}

} // namespace voctk
