#pragma once

#include <cstddef>
#include <vector>

#include "voctk/config.hpp"
#include "voctk/waveform.hpp"

namespace voctk {

// Row-major dense matrix of doubles.
struct MatrixD {
    std::size_t rows = 0, cols = 0;
    std::vector<double> data;

    MatrixD() = default;
    MatrixD(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}

    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    double* row(std::size_t r) { return data.data() + r * cols; }
    const double* row(std::size_t r) const { return data.data() + r * cols; }
};

struct StftPlan {
    int n_fft = 1024;
    int hop = 256;
    int win = 1024;   // Hann window length, zero-padded centered to n_fft
    bool center = true; // reflect padding by n_fft/2 on both sides

    int bins() const { return n_fft / 2 + 1; }
};

void validate(const StftPlan& plan);

enum class SpectrogramKind { linear, log };

// bins x frames magnitude (or log-magnitude) matrix.
struct Spectrogram {
    SpectrogramKind kind = SpectrogramKind::linear;
    MatrixD values; // rows = bins, cols = frames
};

// mels x frames log-mel matrix.
struct MelSpectrogram {
    MatrixD values;
};

// Clamp floor applied to magnitudes before taking the natural log.
inline constexpr double kLogClampFloor = 1e-5;

// Periodic Hann window of the given length.
std::vector<double> hann_window(int length);

// Magnitude STFT. With center padding the frame count is
// floor(len / hop) + 1 exactly.
Spectrogram stft(const Waveform& w, const StftPlan& plan);

// Natural-log magnitude with the clamp floor applied first.
Spectrogram log_magnitude(const Spectrogram& linear);

// Triangular filters, HTK mel scale (2595*log10(1 + f/700)), no area
// normalization; each filter's support lies within [fmin, fmax].
MatrixD mel_filterbank(const VocoderConfig& cfg);

// log(clamp(filterbank . |STFT|, floor)); uses the config's n_fft/win/hop.
MelSpectrogram mel_spectrogram(const Waveform& w, const VocoderConfig& cfg);

// One log-magnitude spectrogram per [n_fft, hop, win] triple, in order.
std::vector<Spectrogram> multi_resolution_spectrograms(const Waveform& w,
                                                       const std::vector<Resolution>& resolutions);

} // namespace voctk
