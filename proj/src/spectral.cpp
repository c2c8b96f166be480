#include "voctk/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "voctk/fft.hpp"

namespace voctk {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Reflect (mirror without repeating the edge sample) for out-of-range reads.
std::size_t reflect_index(long long i, long long n) {
    if (n == 1) return 0;
    const long long period = 2 * (n - 1);
    long long m = i % period;
    if (m < 0) m += period;
    if (m >= n) m = period - m;
    return static_cast<std::size_t>(m);
}

} // namespace

void validate(const StftPlan& plan) {
    if (plan.n_fft <= 0 || plan.hop <= 0 || plan.win <= 0)
        throw validation_error("stft plan: sizes must be positive");
    if (plan.win > plan.n_fft) throw validation_error("stft plan: win must be <= n_fft");
    if (plan.hop > plan.win) throw validation_error("stft plan: hop must be <= win");
}

std::vector<double> hann_window(int length) {
    std::vector<double> w(static_cast<std::size_t>(length));
    for (int i = 0; i < length; ++i)
        w[static_cast<std::size_t>(i)] = 0.5 * (1.0 - std::cos(2.0 * kPi * i / length));
    return w;
}

Spectrogram stft(const Waveform& w, const StftPlan& plan) {
    validate(plan);
    validate(w);
    const long long n = static_cast<long long>(w.samples.size());
    if (n < 1) throw validation_error("stft: empty waveform");

    const int n_fft = plan.n_fft;
    const int pad = plan.center ? n_fft / 2 : 0;
    const std::size_t frames =
        plan.center ? static_cast<std::size_t>(n / plan.hop) + 1
                    : (n >= n_fft ? static_cast<std::size_t>((n - n_fft) / plan.hop) + 1 : 0);
    if (frames == 0) throw validation_error("stft: waveform shorter than one frame");

    // Hann window of win samples, zero-padded centered in the n_fft frame.
    std::vector<double> window(static_cast<std::size_t>(n_fft), 0.0);
    {
        auto hann = hann_window(plan.win);
        int off = (n_fft - plan.win) / 2;
        for (int i = 0; i < plan.win; ++i)
            window[static_cast<std::size_t>(off + i)] = hann[static_cast<std::size_t>(i)];
    }

    const std::size_t bins = static_cast<std::size_t>(plan.bins());
    Spectrogram out;
    out.kind = SpectrogramKind::linear;
    out.values = MatrixD(bins, frames);

    std::vector<cdouble> frame(static_cast<std::size_t>(n_fft));
    for (std::size_t f = 0; f < frames; ++f) {
        const long long start = static_cast<long long>(f) * plan.hop - pad;
        for (int i = 0; i < n_fft; ++i) {
            const long long src = start + i;
            double s = (src >= 0 && src < n) ? w.samples[static_cast<std::size_t>(src)]
                                             : w.samples[reflect_index(src, n)];
            frame[static_cast<std::size_t>(i)] = cdouble(s * window[static_cast<std::size_t>(i)], 0.0);
        }
        auto spec = fft(frame);
        for (std::size_t k = 0; k < bins; ++k) out.values.at(k, f) = std::abs(spec[k]);
    }
    return out;
}

Spectrogram log_magnitude(const Spectrogram& linear) {
    if (linear.kind != SpectrogramKind::linear)
        throw validation_error("log_magnitude: input already log-scaled");
    Spectrogram out;
    out.kind = SpectrogramKind::log;
    out.values = linear.values;
    for (double& v : out.values.data) v = std::log(std::max(v, kLogClampFloor));
    return out;
}

namespace {

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

} // namespace

MatrixD mel_filterbank(const VocoderConfig& cfg) {
    validate(cfg);
    const int bins = cfg.n_fft / 2 + 1;
    const int mels = cfg.num_mels;

    const double mel_lo = hz_to_mel(cfg.fmin);
    const double mel_hi = hz_to_mel(cfg.fmax);
    std::vector<double> centers_hz(static_cast<std::size_t>(mels) + 2);
    for (int i = 0; i < mels + 2; ++i)
        centers_hz[static_cast<std::size_t>(i)] =
            mel_to_hz(mel_lo + (mel_hi - mel_lo) * i / (mels + 1));

    MatrixD fb(static_cast<std::size_t>(mels), static_cast<std::size_t>(bins));
    const double hz_per_bin = static_cast<double>(cfg.sampling_rate) / cfg.n_fft;
    for (int m = 0; m < mels; ++m) {
        const double lo = centers_hz[static_cast<std::size_t>(m)];
        const double mid = centers_hz[static_cast<std::size_t>(m) + 1];
        const double hi = centers_hz[static_cast<std::size_t>(m) + 2];
        for (int k = 0; k < bins; ++k) {
            const double f = k * hz_per_bin;
            double up = (f - lo) / std::max(mid - lo, 1e-12);
            double down = (hi - f) / std::max(hi - mid, 1e-12);
            fb.at(static_cast<std::size_t>(m), static_cast<std::size_t>(k)) =
                std::max(0.0, std::min(up, down));
        }
    }
    return fb;
}

MelSpectrogram mel_spectrogram(const Waveform& w, const VocoderConfig& cfg) {
    if (w.sample_rate != cfg.sampling_rate)
        throw validation_error("mel_spectrogram: waveform sample rate " +
                               std::to_string(w.sample_rate) + " does not match config " +
                               std::to_string(cfg.sampling_rate));
    StftPlan plan{cfg.n_fft, cfg.hop_size, cfg.win_size, true};
    Spectrogram mag = stft(w, plan);
    MatrixD fb = mel_filterbank(cfg);

    MelSpectrogram out;
    out.values = MatrixD(fb.rows, mag.values.cols);
    for (std::size_t m = 0; m < fb.rows; ++m) {
        const double* fr = fb.row(m);
        for (std::size_t t = 0; t < mag.values.cols; ++t) {
            double acc = 0.0;
            for (std::size_t k = 0; k < fb.cols; ++k) acc += fr[k] * mag.values.at(k, t);
            out.values.at(m, t) = std::log(std::max(acc, kLogClampFloor));
        }
    }
    return out;
}

std::vector<Spectrogram> multi_resolution_spectrograms(
    const Waveform& w, const std::vector<Resolution>& resolutions) {
    if (resolutions.empty())
        throw validation_error("multi_resolution_spectrograms: empty resolution list");
    std::vector<Spectrogram> out;
    out.reserve(resolutions.size());
    for (const auto& res : resolutions) {
        StftPlan plan{res[0], res[1], res[2], true};
        out.push_back(log_magnitude(stft(w, plan)));
    }
    return out;
}

} // namespace voctk
