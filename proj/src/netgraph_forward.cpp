#include <algorithm>
#include <cmath>
#include <cstring>

#if defined(__AVX512F__)
#include <immintrin.h>
#endif

#include "voctk/netgraph.hpp"

namespace voctk {

namespace {

constexpr std::size_t kConvTile = 4096; // output samples per L1-resident tile

std::size_t reflect_index(long long i, long long n) {
    if (n == 1) return 0;
    const long long period = 2 * (n - 1);
    long long m = i % period;
    if (m < 0) m += period;
    if (m >= n) m = period - m;
    return static_cast<std::size_t>(m);
}

#if defined(__AVX512F__)
// Register-blocked kernel for the stride-1 path: 4 output channels x 32
// samples per block so each input vector load feeds 8 FMAs. Accumulation
// order over (ic, j) matches the generic path, keeping results identical.
void conv1d_quad_avx512(const MatrixF& xpad, int ic0, int icpg, int kernel, int dilation,
                        const float* w0, const float* w1, const float* w2, const float* w3,
                        const float* bias4, float* y0, float* y1, float* y2, float* y3,
                        long long t0, long long t_len) {
    long long t = 0;
    for (; t + 32 <= t_len; t += 32) {
        __m512 a00 = _mm512_set1_ps(bias4[0]), a01 = _mm512_set1_ps(bias4[0]);
        __m512 a10 = _mm512_set1_ps(bias4[1]), a11 = _mm512_set1_ps(bias4[1]);
        __m512 a20 = _mm512_set1_ps(bias4[2]), a21 = _mm512_set1_ps(bias4[2]);
        __m512 a30 = _mm512_set1_ps(bias4[3]), a31 = _mm512_set1_ps(bias4[3]);
        for (int ic = 0; ic < icpg; ++ic) {
            const float* xr = xpad.row(static_cast<std::size_t>(ic0 + ic)) + t0 + t;
            const float* wr0 = w0 + static_cast<std::size_t>(ic) * kernel;
            const float* wr1 = w1 + static_cast<std::size_t>(ic) * kernel;
            const float* wr2 = w2 + static_cast<std::size_t>(ic) * kernel;
            const float* wr3 = w3 + static_cast<std::size_t>(ic) * kernel;
            for (int j = 0; j < kernel; ++j) {
                const float* xs = xr + static_cast<long long>(j) * dilation;
                const __m512 x0 = _mm512_loadu_ps(xs);
                const __m512 x1 = _mm512_loadu_ps(xs + 16);
                const __m512 b0 = _mm512_set1_ps(wr0[j]);
                const __m512 b1 = _mm512_set1_ps(wr1[j]);
                const __m512 b2 = _mm512_set1_ps(wr2[j]);
                const __m512 b3 = _mm512_set1_ps(wr3[j]);
                a00 = _mm512_fmadd_ps(b0, x0, a00);
                a01 = _mm512_fmadd_ps(b0, x1, a01);
                a10 = _mm512_fmadd_ps(b1, x0, a10);
                a11 = _mm512_fmadd_ps(b1, x1, a11);
                a20 = _mm512_fmadd_ps(b2, x0, a20);
                a21 = _mm512_fmadd_ps(b2, x1, a21);
                a30 = _mm512_fmadd_ps(b3, x0, a30);
                a31 = _mm512_fmadd_ps(b3, x1, a31);
            }
        }
        _mm512_storeu_ps(y0 + t, a00);
        _mm512_storeu_ps(y0 + t + 16, a01);
        _mm512_storeu_ps(y1 + t, a10);
        _mm512_storeu_ps(y1 + t + 16, a11);
        _mm512_storeu_ps(y2 + t, a20);
        _mm512_storeu_ps(y2 + t + 16, a21);
        _mm512_storeu_ps(y3 + t, a30);
        _mm512_storeu_ps(y3 + t + 16, a31);
    }
    // Tail in the same accumulation order.
    for (; t < t_len; ++t) {
        float acc[4] = {bias4[0], bias4[1], bias4[2], bias4[3]};
        for (int ic = 0; ic < icpg; ++ic) {
            const float* xr = xpad.row(static_cast<std::size_t>(ic0 + ic)) + t0 + t;
            const float* wr[4] = {w0 + static_cast<std::size_t>(ic) * kernel,
                                  w1 + static_cast<std::size_t>(ic) * kernel,
                                  w2 + static_cast<std::size_t>(ic) * kernel,
                                  w3 + static_cast<std::size_t>(ic) * kernel};
            for (int j = 0; j < kernel; ++j) {
                const float xv = xr[static_cast<long long>(j) * dilation];
                for (int q = 0; q < 4; ++q) acc[q] += wr[q][j] * xv;
            }
        }
        y0[t] = acc[0];
        y1[t] = acc[1];
        y2[t] = acc[2];
        y3[t] = acc[3];
    }
}
#endif

} // namespace

MatrixF conv1d(const MatrixF& x, const std::vector<float>& weight, const std::vector<float>& bias,
               int out_channels, int kernel, int stride, int dilation, int groups, int padding) {
    const int in_channels = static_cast<int>(x.rows);
    const long long T = static_cast<long long>(x.cols);
    if (in_channels <= 0 || T <= 0) throw validation_error("conv1d: empty input");
    if (groups <= 0 || in_channels % groups || out_channels % groups)
        throw validation_error("conv1d: groups must divide both channel counts");
    const int icpg = in_channels / groups;
    const int ocpg = out_channels / groups;
    if (weight.size() != static_cast<std::size_t>(out_channels) * icpg * kernel)
        throw validation_error("conv1d: weight shape mismatch");
    if (!bias.empty() && bias.size() != static_cast<std::size_t>(out_channels))
        throw validation_error("conv1d: bias shape mismatch");

    const long long eff = static_cast<long long>(dilation) * (kernel - 1) + 1;
    const long long T_out = (T + 2 * padding - eff) / stride + 1;
    if (T_out <= 0) throw validation_error("conv1d: input too short for kernel");

    // Zero-padded copy of the input rows.
    const std::size_t Tp = static_cast<std::size_t>(T + 2 * padding);
    MatrixF xpad(static_cast<std::size_t>(in_channels), Tp, 0.0f);
    for (int ic = 0; ic < in_channels; ++ic)
        std::memcpy(xpad.row(static_cast<std::size_t>(ic)) + padding,
                    x.row(static_cast<std::size_t>(ic)), sizeof(float) * static_cast<std::size_t>(T));

    MatrixF y(static_cast<std::size_t>(out_channels), static_cast<std::size_t>(T_out));
    std::vector<float> acc(kConvTile);
    const std::vector<float> zero_bias(static_cast<std::size_t>(out_channels), 0.0f);
    const float* bias_ptr = bias.empty() ? zero_bias.data() : bias.data();

    // Generic per-channel path; also the tail when the blocked kernel below
    // covers only part of a group.
    auto run_generic = [&](int oc, long long t0, std::size_t len) {
        const int ic0 = (oc / ocpg) * icpg;
        const float* wbase = weight.data() + static_cast<std::size_t>(oc) * icpg * kernel;
        std::fill(acc.begin(), acc.begin() + static_cast<long long>(len),
                  bias_ptr[static_cast<std::size_t>(oc)]);
        for (int ic = 0; ic < icpg; ++ic) {
            const float* xrow = xpad.row(static_cast<std::size_t>(ic0 + ic));
            const float* w = wbase + static_cast<std::size_t>(ic) * kernel;
            if (stride == 1) {
                const float* xr = xrow + t0;
                for (int j = 0; j < kernel; ++j) {
                    const float wv = w[j];
                    const float* xs = xr + static_cast<long long>(j) * dilation;
                    for (std::size_t t = 0; t < len; ++t) acc[t] += wv * xs[t];
                }
            } else {
                for (int j = 0; j < kernel; ++j) {
                    const float wv = w[j];
                    const float* xs = xrow + t0 * stride + static_cast<long long>(j) * dilation;
                    for (std::size_t t = 0; t < len; ++t)
                        acc[t] += wv * xs[t * static_cast<std::size_t>(stride)];
                }
            }
        }
        std::memcpy(y.row(static_cast<std::size_t>(oc)) + t0, acc.data(), sizeof(float) * len);
    };

    for (long long t0 = 0; t0 < T_out; t0 += static_cast<long long>(kConvTile)) {
        const std::size_t len = static_cast<std::size_t>(std::min<long long>(kConvTile, T_out - t0));
        for (int g = 0; g < groups; ++g) {
            const int oc_begin = g * ocpg, oc_end = oc_begin + ocpg;
            int oc = oc_begin;
#if defined(__AVX512F__)
            if (stride == 1) {
                const int ic0 = g * icpg;
                const std::size_t wstride = static_cast<std::size_t>(icpg) * kernel;
                for (; oc + 4 <= oc_end; oc += 4) {
                    const float* w0 = weight.data() + static_cast<std::size_t>(oc) * wstride;
                    conv1d_quad_avx512(xpad, ic0, icpg, kernel, dilation, w0, w0 + wstride,
                                       w0 + 2 * wstride, w0 + 3 * wstride,
                                       bias_ptr + static_cast<std::size_t>(oc),
                                       y.row(static_cast<std::size_t>(oc)) + t0,
                                       y.row(static_cast<std::size_t>(oc + 1)) + t0,
                                       y.row(static_cast<std::size_t>(oc + 2)) + t0,
                                       y.row(static_cast<std::size_t>(oc + 3)) + t0, t0,
                                       static_cast<long long>(len));
                }
            }
#endif
            for (; oc < oc_end; ++oc) run_generic(oc, t0, len);
        }
    }
    return y;
}

MatrixF conv_transpose1d(const MatrixF& x, const std::vector<float>& weight,
                         const std::vector<float>& bias, int out_channels, int kernel, int stride,
                         int padding) {
    const int in_channels = static_cast<int>(x.rows);
    const long long T = static_cast<long long>(x.cols);
    if (in_channels <= 0 || T <= 0) throw validation_error("conv_transpose1d: empty input");
    if (weight.size() != static_cast<std::size_t>(in_channels) * out_channels * kernel)
        throw validation_error("conv_transpose1d: weight shape mismatch");
    if (!bias.empty() && bias.size() != static_cast<std::size_t>(out_channels))
        throw validation_error("conv_transpose1d: bias shape mismatch");

    const long long L_out = (T - 1) * stride + kernel - 2 * padding;
    if (L_out <= 0) throw validation_error("conv_transpose1d: output would be empty");

    // y[n] = sum_{i,j : i*stride + j - padding == n} x[i] w[j]. Outputs are
    // produced per phase (n mod stride) so the inner loops stay contiguous.
    const int margin = kernel / stride + 2;
    const std::size_t Tp = static_cast<std::size_t>(T) + 2 * static_cast<std::size_t>(margin);
    MatrixF xpad(static_cast<std::size_t>(in_channels), Tp, 0.0f);
    for (int ic = 0; ic < in_channels; ++ic)
        std::memcpy(xpad.row(static_cast<std::size_t>(ic)) + margin,
                    x.row(static_cast<std::size_t>(ic)), sizeof(float) * static_cast<std::size_t>(T));

    MatrixF y(static_cast<std::size_t>(out_channels), static_cast<std::size_t>(L_out));
    std::vector<float> phase_acc;

    for (int oc = 0; oc < out_channels; ++oc) {
        const float b = bias.empty() ? 0.0f : bias[static_cast<std::size_t>(oc)];
        float* yrow = y.row(static_cast<std::size_t>(oc));
        for (int phi = 0; phi < stride && phi < L_out; ++phi) {
            const int r = (phi + padding) % stride;
            const long long m0 = (phi + padding - r) / stride;
            const long long qcount = (L_out - 1 - phi) / stride + 1;
            phase_acc.assign(static_cast<std::size_t>(qcount), b);

            for (int ic = 0; ic < in_channels; ++ic) {
                const float* xrow = xpad.row(static_cast<std::size_t>(ic)) + margin;
                const float* w =
                    weight.data() + (static_cast<std::size_t>(ic) * out_channels + oc) * kernel;
                for (int j = r; j < kernel; j += stride) {
                    const float wv = w[j];
                    const long long shift = m0 - (j - r) / stride;
                    const float* xs = xrow + shift;
                    for (long long q = 0; q < qcount; ++q)
                        phase_acc[static_cast<std::size_t>(q)] += wv * xs[q];
                }
            }
            for (long long q = 0; q < qcount; ++q)
                yrow[q * stride + phi] = phase_acc[static_cast<std::size_t>(q)];
        }
    }
    return y;
}

Tensor3F conv2d(const Tensor3F& x, const std::vector<float>& weight, const std::vector<float>& bias,
                int out_channels, int kernel_h, int kernel_w, int stride_h, int stride_w, int pad_h,
                int pad_w) {
    const int C = static_cast<int>(x.ch);
    const long long H = static_cast<long long>(x.h), W = static_cast<long long>(x.w);
    if (C <= 0 || H <= 0 || W <= 0) throw validation_error("conv2d: empty input");
    if (weight.size() !=
        static_cast<std::size_t>(out_channels) * C * kernel_h * kernel_w)
        throw validation_error("conv2d: weight shape mismatch");
    if (!bias.empty() && bias.size() != static_cast<std::size_t>(out_channels))
        throw validation_error("conv2d: bias shape mismatch");

    const long long H_out = (H + 2 * pad_h - kernel_h) / stride_h + 1;
    const long long W_out = (W + 2 * pad_w - kernel_w) / stride_w + 1;
    if (H_out <= 0 || W_out <= 0) throw validation_error("conv2d: input too small for kernel");

    const long long Hp = H + 2 * pad_h, Wp = W + 2 * pad_w;
    Tensor3F xpad(static_cast<std::size_t>(C), static_cast<std::size_t>(Hp),
                  static_cast<std::size_t>(Wp), 0.0f);
    for (int c = 0; c < C; ++c) {
        for (long long i = 0; i < H; ++i)
            std::memcpy(xpad.plane(static_cast<std::size_t>(c)) + (i + pad_h) * Wp + pad_w,
                        x.plane(static_cast<std::size_t>(c)) + i * W,
                        sizeof(float) * static_cast<std::size_t>(W));
    }

    Tensor3F y(static_cast<std::size_t>(out_channels), static_cast<std::size_t>(H_out),
               static_cast<std::size_t>(W_out));
    for (int oc = 0; oc < out_channels; ++oc) {
        float* yp = y.plane(static_cast<std::size_t>(oc));
        const float b = bias.empty() ? 0.0f : bias[static_cast<std::size_t>(oc)];
        std::fill(yp, yp + H_out * W_out, b);
        for (int ic = 0; ic < C; ++ic) {
            const float* xp = xpad.plane(static_cast<std::size_t>(ic));
            const float* w = weight.data() +
                             ((static_cast<std::size_t>(oc) * C + ic) * kernel_h) * kernel_w;
            for (int i = 0; i < kernel_h; ++i) {
                for (int j = 0; j < kernel_w; ++j) {
                    const float wv = w[static_cast<std::size_t>(i) * kernel_w + j];
                    for (long long oh = 0; oh < H_out; ++oh) {
                        const float* xr = xp + (oh * stride_h + i) * Wp + j;
                        float* yr = yp + oh * W_out;
                        if (stride_w == 1) {
                            for (long long ow = 0; ow < W_out; ++ow) yr[ow] += wv * xr[ow];
                        } else {
                            for (long long ow = 0; ow < W_out; ++ow)
                                yr[ow] += wv * xr[ow * stride_w];
                        }
                    }
                }
            }
        }
    }
    return y;
}

MatrixF avg_pool1d_half(const MatrixF& x) {
    const long long T = static_cast<long long>(x.cols);
    if (T <= 0) throw validation_error("avg_pool1d_half: empty input");
    const long long T_out = T / 2 + 1; // kernel 4, stride 2, padding 2
    MatrixF y(x.rows, static_cast<std::size_t>(T_out));
    for (std::size_t c = 0; c < x.rows; ++c) {
        const float* xr = x.row(c);
        float* yr = y.row(c);
        for (long long t = 0; t < T_out; ++t) {
            const long long lo = std::max<long long>(0, 2 * t - 2);
            const long long hi = std::min<long long>(T - 1, 2 * t + 1);
            float s = 0.0f;
            for (long long i = lo; i <= hi; ++i) s += xr[i];
            yr[t] = s / static_cast<float>(hi - lo + 1);
        }
    }
    return y;
}

namespace {

SnakeParams act_params(const ActivationSpec& spec, const WeightBundle& weights) {
    SnakeParams p;
    p.logscale = spec.logscale;
    if (spec.kind == Activation::leaky_relu) return p;
    const auto& a = weights.get(spec.name + ".alpha");
    p.alpha.assign(a.data.begin(), a.data.end());
    if (spec.kind == Activation::snakebeta) {
        const auto& b = weights.get(spec.name + ".beta");
        p.beta.assign(b.data.begin(), b.data.end());
    }
    return p;
}

MatrixF run_conv1d(const MatrixF& x, const Conv1dSpec& c, const WeightBundle& w) {
    return conv1d(x, w.get(c.name + ".weight").data, w.get(c.name + ".bias").data, c.out_channels,
                  c.kernel, c.stride, c.dilation, c.groups, c.padding);
}

MatrixF run_convt1d(const MatrixF& x, const ConvTranspose1dSpec& c, const WeightBundle& w) {
    return conv_transpose1d(x, w.get(c.name + ".weight").data, w.get(c.name + ".bias").data,
                            c.out_channels, c.kernel, c.stride, c.padding);
}

Tensor3F run_conv2d(const Tensor3F& x, const Conv2dSpec& c, const WeightBundle& w) {
    return conv2d(x, w.get(c.name + ".weight").data, w.get(c.name + ".bias").data, c.out_channels,
                  c.kernel_h, c.kernel_w, c.stride_h, c.stride_w, c.pad_h, c.pad_w);
}

MatrixF amp_block_forward(const MatrixF& x, const AmpBlockSpec& block, const WeightBundle& weights,
                          Activation act) {
    MatrixF cur = x;
    for (std::size_t d = 0; d < block.convs1.size(); ++d) {
        MatrixF xt = detail::antialiased_apply(cur, act_params(block.acts1[d], weights), act);
        xt = run_conv1d(xt, block.convs1[d], weights);
        xt = detail::antialiased_apply(xt, act_params(block.acts2[d], weights), act);
        xt = run_conv1d(xt, block.convs2[d], weights);
        for (std::size_t i = 0; i < cur.data.size(); ++i) cur.data[i] += xt.data[i];
    }
    return cur;
}

void leaky_relu_inplace(float* p, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) p[i] = p[i] >= 0.0f ? p[i] : 0.1f * p[i];
}

void run_stack_1d(MatrixF x, const SubDiscriminatorSpec& sub, const WeightBundle& weights,
                  std::vector<float>& scores, std::vector<FeatureMap>& features) {
    for (const auto& c : sub.convs1d) {
        x = run_conv1d(x, c, weights);
        leaky_relu_inplace(x.data.data(), x.data.size());
        features.push_back({{static_cast<long long>(x.rows), static_cast<long long>(x.cols)},
                            x.data});
    }
    x = run_conv1d(x, sub.post1d, weights);
    features.push_back({{static_cast<long long>(x.rows), static_cast<long long>(x.cols)}, x.data});
    scores = x.data;
}

void run_stack_2d(Tensor3F x, const SubDiscriminatorSpec& sub, const WeightBundle& weights,
                  std::vector<float>& scores, std::vector<FeatureMap>& features) {
    for (const auto& c : sub.convs2d) {
        x = run_conv2d(x, c, weights);
        leaky_relu_inplace(x.data.data(), x.data.size());
        features.push_back({{static_cast<long long>(x.ch), static_cast<long long>(x.h),
                             static_cast<long long>(x.w)},
                            x.data});
    }
    x = run_conv2d(x, sub.post2d, weights);
    features.push_back(
        {{static_cast<long long>(x.ch), static_cast<long long>(x.h), static_cast<long long>(x.w)},
         x.data});
    scores = x.data;
}

MatrixF waveform_to_rowf(const Waveform& w) {
    MatrixF x(1, w.samples.size());
    for (std::size_t i = 0; i < w.samples.size(); ++i)
        x.at(0, i) = static_cast<float>(w.samples[i]);
    return x;
}

} // namespace

namespace {

DiscriminatorOutput forward_checked(const DiscriminatorSpec& spec, const WeightBundle& weights,
                                    const Waveform& w, DiscKind expected) {
    if (spec.kind != expected)
        throw validation_error(to_string(expected) + "_forward: spec has kind " +
                               to_string(spec.kind));
    return discriminator_forward(spec, weights, w);
}

} // namespace

DiscriminatorOutput med_forward(const DiscriminatorSpec& spec, const WeightBundle& weights,
                                const Waveform& w) {
    return forward_checked(spec, weights, w, DiscKind::med);
}

DiscriminatorOutput mrd_forward(const DiscriminatorSpec& spec, const WeightBundle& weights,
                                const Waveform& w) {
    return forward_checked(spec, weights, w, DiscKind::mrd);
}

DiscriminatorOutput mpd_forward(const DiscriminatorSpec& spec, const WeightBundle& weights,
                                const Waveform& w) {
    return forward_checked(spec, weights, w, DiscKind::mpd);
}

DiscriminatorOutput msd_forward(const DiscriminatorSpec& spec, const WeightBundle& weights,
                                const Waveform& w) {
    return forward_checked(spec, weights, w, DiscKind::msd);
}

Tensor3F period_reshape(const Waveform& w, int period) {
    if (period <= 0) throw validation_error("period_reshape: period must be positive");
    const long long T = static_cast<long long>(w.samples.size());
    if (T <= 0) throw validation_error("period_reshape: empty waveform");
    const long long padded = (T % period == 0) ? T : T + (period - T % period);
    Tensor3F x(1, static_cast<std::size_t>(padded / period), static_cast<std::size_t>(period));
    for (long long i = 0; i < padded; ++i)
        x.data[static_cast<std::size_t>(i)] = static_cast<float>(
            i < T ? w.samples[static_cast<std::size_t>(i)] : w.samples[reflect_index(i, T)]);
    return x;
}

Waveform generator_forward(const GeneratorSpec& spec, const WeightBundle& weights,
                           const MelSpectrogram& mel, int sample_rate) {
    const std::size_t frames = mel.values.cols;
    if (mel.values.rows != static_cast<std::size_t>(spec.num_mels))
        throw validation_error("generator_forward: mel has " + std::to_string(mel.values.rows) +
                               " bands, spec expects " + std::to_string(spec.num_mels));
    if (frames == 0) throw validation_error("generator_forward: empty mel");

    MatrixF x(mel.values.rows, frames);
    for (std::size_t i = 0; i < mel.values.data.size(); ++i)
        x.data[i] = static_cast<float>(mel.values.data[i]);

    x = run_conv1d(x, spec.conv_pre, weights);
    for (std::size_t stage = 0; stage < spec.ups.size(); ++stage) {
        x = run_convt1d(x, spec.ups[stage], weights);
        const auto& stage_blocks = spec.blocks[stage];
        MatrixF sum = amp_block_forward(x, stage_blocks[0], weights, spec.activation);
        for (std::size_t j = 1; j < stage_blocks.size(); ++j) {
            MatrixF b = amp_block_forward(x, stage_blocks[j], weights, spec.activation);
            for (std::size_t i = 0; i < sum.data.size(); ++i) sum.data[i] += b.data[i];
        }
        const float inv = 1.0f / static_cast<float>(stage_blocks.size());
        for (auto& v : sum.data) v *= inv;
        x = std::move(sum);
    }
    x = detail::antialiased_apply(x, act_params(spec.act_post, weights), spec.activation);
    x = run_conv1d(x, spec.conv_post, weights);

    Waveform out;
    out.sample_rate = sample_rate;
    out.samples.resize(x.cols);
    for (std::size_t t = 0; t < x.cols; ++t) out.samples[t] = std::tanh(x.at(0, t));
    return out;
}

DiscriminatorOutput discriminator_forward(const DiscriminatorSpec& spec,
                                          const WeightBundle& weights, const Waveform& w) {
    validate(w);
    if (w.samples.empty()) throw validation_error("discriminator_forward: empty waveform");

    DiscriminatorOutput out;
    out.scores.resize(spec.subs.size());
    out.features.resize(spec.subs.size());

    // MSD pooled inputs are shared across scales.
    MatrixF pooled;
    for (std::size_t s = 0; s < spec.subs.size(); ++s) {
        const auto& sub = spec.subs[s];
        switch (spec.kind) {
            case DiscKind::med: {
                Waveform env = extract_envelope(w, sub.mode, spec.envelope_filter_order);
                run_stack_1d(waveform_to_rowf(env), sub, weights, out.scores[s], out.features[s]);
                break;
            }
            case DiscKind::msd: {
                if (sub.pool_stages == 0)
                    pooled = waveform_to_rowf(w);
                else
                    pooled = avg_pool1d_half(pooled);
                run_stack_1d(pooled, sub, weights, out.scores[s], out.features[s]);
                break;
            }
            case DiscKind::mrd: {
                StftPlan plan{sub.resolution[0], sub.resolution[1], sub.resolution[2], true};
                Spectrogram spec_log = log_magnitude(stft(w, plan));
                Tensor3F x(1, spec_log.values.rows, spec_log.values.cols);
                for (std::size_t i = 0; i < spec_log.values.data.size(); ++i)
                    x.data[i] = static_cast<float>(spec_log.values.data[i]);
                run_stack_2d(std::move(x), sub, weights, out.scores[s], out.features[s]);
                break;
            }
            case DiscKind::mpd: {
                run_stack_2d(period_reshape(w, sub.period), sub, weights, out.scores[s],
                             out.features[s]);
                break;
            }
        }
    }
    return out;
}

} // namespace voctk
