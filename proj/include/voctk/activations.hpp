#pragma once

#include <cstddef>
#include <vector>

#include "voctk/common.hpp"
#include "voctk/config.hpp"

namespace voctk {

// Row-major float matrix, rows = channels, cols = time.
struct MatrixF {
    std::size_t rows = 0, cols = 0;
    std::vector<float> data;

    MatrixF() = default;
    MatrixF(std::size_t r, std::size_t c, float fill = 0.0f) : rows(r), cols(c), data(r * c, fill) {}

    float* row(std::size_t r) { return data.data() + r * cols; }
    const float* row(std::size_t r) const { return data.data() + r * cols; }
    float& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    float at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

// f_a(x) = x + (1/a) sin^2(a x)
double snake(double x, double alpha);
// f_a'(x) = 1 + sin(2 a x)
double snake_derivative(double x, double alpha);

// x + (1/b) sin^2(a x); reduces to snake when b == a.
double snakebeta(double x, double alpha, double beta);
double snakebeta_dx(double x, double alpha, double beta);
double snakebeta_dalpha(double x, double alpha, double beta);
double snakebeta_dbeta(double x, double alpha, double beta);

struct LeakySlope {
    double beta_slope = 0.1;
};

double leaky_relu(double x, LeakySlope slope);
double leaky_relu_derivative(double x, LeakySlope slope);

// Per-channel activation parameters. When logscale is set the stored values
// are logs and get exponentiated on use, which keeps them positive.
struct SnakeParams {
    std::vector<double> alpha;
    std::vector<double> beta;
    bool logscale = false;

    double alpha_at(std::size_t c) const;
    double beta_at(std::size_t c) const;
};

// Anti-aliasing low-pass used around the nonlinearity: Kaiser-windowed sinc,
// 12 taps per polyphase branch, cutoff at half the upsampled Nyquist.
inline constexpr int kResampleTapsPerPhase = 12;

// 2x upsample (zero-stuffing + LPF, gain compensated), pointwise snake or
// snakebeta per channel, LPF + 2x decimation. Output shape equals input
// shape. Requires cols >= kResampleTapsPerPhase.
MatrixF antialiased_activation(const MatrixF& x, const SnakeParams& params,
                               Activation kind = Activation::snakebeta);

namespace detail {

// Same pipeline without the minimum-length guard (edges replicate), also
// accepting leaky_relu; this is what the generator blocks call.
MatrixF antialiased_apply(const MatrixF& x, const SnakeParams& params, Activation kind);

// Vectorizable sin approximation (|err| < 7e-7 in float); argument is
// range-reduced once, so it is intended for |x| up to a few hundred.
float fast_sin(float x);

// In-place snake/snakebeta over one channel row.
void snake_row(float* x, std::size_t n, float alpha, float inv_beta);

const std::vector<float>& resample_kernel(); // 24 taps, sum == 1

} // namespace detail

} // namespace voctk
