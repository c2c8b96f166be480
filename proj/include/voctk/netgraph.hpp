#pragma once

#include <string>
#include <vector>

#include "voctk/activations.hpp"
#include "voctk/config.hpp"
#include "voctk/envelope.hpp"
#include "voctk/spectral.hpp"
#include "voctk/tensor.hpp"
#include "voctk/waveform.hpp"

namespace voctk {

// ---------------------------------------------------------------------------
// Layer descriptors. Specs are derived deterministically from a VocoderConfig
// and carry everything needed to enumerate tensors, count parameters and run
// the forward pass against a WeightBundle.
// ---------------------------------------------------------------------------

struct Conv1dSpec {
    std::string name; // weight tensor is <name>.weight, bias <name>.bias
    int in_channels = 1, out_channels = 1, kernel = 1;
    int stride = 1, dilation = 1, groups = 1, padding = 0;

    long long param_count() const {
        return static_cast<long long>(out_channels) * (in_channels / groups) * kernel +
               out_channels;
    }
};

struct ConvTranspose1dSpec {
    std::string name;
    int in_channels = 1, out_channels = 1, kernel = 1, stride = 1, padding = 0;

    long long param_count() const {
        return static_cast<long long>(in_channels) * out_channels * kernel + out_channels;
    }
};

struct Conv2dSpec {
    std::string name;
    int in_channels = 1, out_channels = 1;
    int kernel_h = 1, kernel_w = 1, stride_h = 1, stride_w = 1, pad_h = 0, pad_w = 0;

    long long param_count() const {
        return static_cast<long long>(out_channels) * in_channels * kernel_h * kernel_w +
               out_channels;
    }
};

// Channel-wise activation parameters (alpha, and beta for snakebeta).
struct ActivationSpec {
    std::string name; // tensors <name>.alpha / <name>.beta
    int channels = 0;
    Activation kind = Activation::snakebeta;
    bool logscale = true;

    long long param_count() const {
        switch (kind) {
            case Activation::snake: return channels;
            case Activation::snakebeta: return 2LL * channels;
            case Activation::leaky_relu: return 0;
        }
        return 0;
    }
};

// One AMP block: per dilation, an anti-aliased activation + dilated conv,
// then another activation + unit-dilation conv, with a residual add.
struct AmpBlockSpec {
    int channels = 0;
    int kernel = 3;
    std::vector<int> dilations;
    std::vector<Conv1dSpec> convs1; // dilated
    std::vector<Conv1dSpec> convs2; // dilation 1
    std::vector<ActivationSpec> acts1, acts2;
};

struct GeneratorSpec {
    int num_mels = 80;
    int upsample_initial_channel = 512;
    std::vector<int> upsample_rates;
    Activation activation = Activation::snakebeta;
    bool snake_logscale = true;

    Conv1dSpec conv_pre;
    std::vector<ConvTranspose1dSpec> ups;
    std::vector<std::vector<AmpBlockSpec>> blocks; // [stage][kernel index]
    ActivationSpec act_post;
    Conv1dSpec conv_post;

    int total_upsample() const {
        int p = 1;
        for (int r : upsample_rates) p *= r;
        return p;
    }
};

enum class DiscKind { med, mrd, mpd, msd };

std::string to_string(DiscKind k);
DiscKind disc_kind_from_string(const std::string& s);

struct SubDiscriminatorSpec {
    std::string name;
    std::vector<Conv1dSpec> convs1d; // MED / MSD stacks
    Conv1dSpec post1d;
    std::vector<Conv2dSpec> convs2d; // MPD / MRD stacks
    Conv2dSpec post2d;

    // Input preprocessing, depending on the ensemble kind.
    EnvelopeMode mode = EnvelopeMode::identity; // MED
    Resolution resolution = {0, 0, 0};          // MRD
    int period = 0;                             // MPD
    int pool_stages = 0;                        // MSD: 0, 1, 2 average-pool passes
};

struct DiscriminatorSpec {
    DiscKind kind = DiscKind::med;
    std::vector<SubDiscriminatorSpec> subs;
    int envelope_filter_order = kEnvelopeFilterOrder; // MED only
};

// Score maps and per-layer features for each sub-discriminator, in the
// ensemble's canonical order (MED: modes -1,0,1,300,500; MRD: resolution
// order; MPD: period order; MSD: pooling order).
struct FeatureMap {
    std::vector<long long> shape;
    std::vector<float> data;
};

struct DiscriminatorOutput {
    std::vector<std::vector<float>> scores;
    std::vector<std::vector<FeatureMap>> features;
};

// ---------------------------------------------------------------------------
// Spec builders and parameter audit
// ---------------------------------------------------------------------------

GeneratorSpec build_generator(const VocoderConfig& cfg);
DiscriminatorSpec build_discriminator(DiscKind kind, const VocoderConfig& cfg);

struct TensorDecl {
    std::string name;
    std::vector<long long> shape;
    bool is_activation_param = false; // alpha/beta rather than weight/bias
};

std::vector<TensorDecl> enumerate_tensors(const GeneratorSpec& spec);
std::vector<TensorDecl> enumerate_tensors(const DiscriminatorSpec& spec);

long long count_parameters(const GeneratorSpec& spec);
long long count_parameters(const DiscriminatorSpec& spec);

// Weights ~ N(0, 0.01); activation alpha/beta start at 1 (log 0 when the
// spec uses logscale storage). Same seed, same bundle.
WeightBundle random_init(const GeneratorSpec& spec, std::uint64_t seed);
WeightBundle random_init(const DiscriminatorSpec& spec, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Primitive forward ops (exposed for oracle tests)
// ---------------------------------------------------------------------------

struct Tensor3F {
    std::size_t ch = 0, h = 0, w = 0;
    std::vector<float> data;

    Tensor3F() = default;
    Tensor3F(std::size_t c, std::size_t hh, std::size_t ww, float fill = 0.0f)
        : ch(c), h(hh), w(ww), data(c * hh * ww, fill) {}
    float* plane(std::size_t c) { return data.data() + c * h * w; }
    const float* plane(std::size_t c) const { return data.data() + c * h * w; }
};

MatrixF conv1d(const MatrixF& x, const std::vector<float>& weight, const std::vector<float>& bias,
               int out_channels, int kernel, int stride, int dilation, int groups, int padding);

MatrixF conv_transpose1d(const MatrixF& x, const std::vector<float>& weight,
                         const std::vector<float>& bias, int out_channels, int kernel, int stride,
                         int padding);

Tensor3F conv2d(const Tensor3F& x, const std::vector<float>& weight, const std::vector<float>& bias,
                int out_channels, int kernel_h, int kernel_w, int stride_h, int stride_w, int pad_h,
                int pad_w);

// Average pooling, kernel 4 / stride 2 / padding 2, padding excluded from the
// mean so constants stay constant.
MatrixF avg_pool1d_half(const MatrixF& x);

// MPD preprocessing: reflect-pad to a multiple of the period, then reshape
// row-major to 1 x (T/p) x p.
Tensor3F period_reshape(const Waveform& w, int period);

// ---------------------------------------------------------------------------
// Network forward passes (deterministic, pure)
// ---------------------------------------------------------------------------

// Output length is exactly mel frames x total_upsample; samples in [-1, 1].
Waveform generator_forward(const GeneratorSpec& spec, const WeightBundle& weights,
                           const MelSpectrogram& mel, int sample_rate);

DiscriminatorOutput discriminator_forward(const DiscriminatorSpec& spec,
                                          const WeightBundle& weights, const Waveform& w);

// Named ensemble entry points; each checks that the spec matches its kind.
DiscriminatorOutput med_forward(const DiscriminatorSpec& spec, const WeightBundle& weights,
                                const Waveform& w);
DiscriminatorOutput mrd_forward(const DiscriminatorSpec& spec, const WeightBundle& weights,
                                const Waveform& w);
DiscriminatorOutput mpd_forward(const DiscriminatorSpec& spec, const WeightBundle& weights,
                                const Waveform& w);
DiscriminatorOutput msd_forward(const DiscriminatorSpec& spec, const WeightBundle& weights,
                                const Waveform& w);

} // namespace voctk
