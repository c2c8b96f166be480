#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "voctk/config.hpp"
#include "voctk/spectral.hpp"
#include "voctk/waveform.hpp"

namespace voctk {

struct EmbeddingStats {
    std::vector<double> mean;
    MatrixD covariance; // symmetric PSD, unbiased
    std::size_t n = 0;
};

struct MetricReport {
    double mcd = 0.0;
    double m_stft = 0.0;
    double ssim = 0.0;        // in [-1, 1]
    double pcc = 0.0;         // in [-1, 1]
    double periodicity = 0.0; // >= 0
    std::optional<double> fad; // set when embedding stats are supplied
    std::string provenance;    // config hash + design-decision fingerprint
};

struct DtwResult {
    std::vector<std::pair<std::size_t, std::size_t>> path; // monotone, boundary-complete
    double cost = 0.0;
};

// Exact dynamic-programming alignment (steps: diagonal, right, down) over
// Euclidean frame costs. Rows of `a` and `b` are frames.
DtwResult dtw_align(const MatrixD& a, const MatrixD& b);

// Mel-cepstra: orthonormal DCT-II of the log-mel frames, coefficients c1..c13
// (c0 dropped). Rows are frames.
MatrixD mel_cepstra(const Waveform& w, const VocoderConfig& cfg);

// (10/ln 10) * sqrt(2) * mean over the DTW-aligned pairs of the Euclidean
// cepstral distance.
double mcd(const Waveform& ref, const Waveform& gen, const VocoderConfig& cfg);

// Mean over resolutions of spectral convergence + log-magnitude L1. Inputs
// are trimmed to the shorter length.
double m_stft_loss(const Waveform& ref, const Waveform& gen,
                   const std::vector<Resolution>& resolutions);

// Mean local SSIM, 11x11 Gaussian window (sigma 1.5), K1=0.01 / K2=0.03,
// computed after jointly min-max normalizing both matrices to [0, 1].
double ssim_mel(const MelSpectrogram& ref, const MelSpectrogram& gen);

// Pearson correlation over the flattened matrices (frames trimmed to match).
double pcc_mel(const MelSpectrogram& ref, const MelSpectrogram& gen);

struct PitchTrack {
    std::vector<double> f0;          // Hz, 0 when no candidate
    std::vector<double> periodicity; // voicing confidence in [0, 1]
};

// YIN-style autocorrelation tracker: 10 ms hop, 50-1100 Hz search range.
PitchTrack pitch_track(const Waveform& w);

// RMS difference of the periodicity tracks over frames voiced in either
// input (confidence > 0.5).
double periodicity_error(const Waveform& ref, const Waveform& gen);

// ||mu_a - mu_b||^2 + Tr(Sa + Sb - 2 (Sa Sb)^{1/2}); the matrix square root
// uses symmetric eigendecompositions with negative eigenvalues clipped at
// the -1e-8 tolerance.
double frechet_distance(const EmbeddingStats& a, const EmbeddingStats& b);

// Sample mean and unbiased covariance of the n x d embedding matrix.
EmbeddingStats embedding_stats(const MatrixD& embeddings);

struct LengthReport {
    long long mel_frames = 0;
    long long hop = 0;
    long long expected_len = 0;
    long long waveform_len = 0;
    long long diff = 0;
    double diff_seconds = 0.0; // 0 when no sample rate given
    bool pass = false;         // |diff| <= hop
};

LengthReport length_consistency(long long mel_frames, long long waveform_len, long long hop,
                                int sample_rate = 0);

// Full per-pair report; the waveforms are trimmed to the shorter length.
MetricReport compute_metric_report(const Waveform& ref, const Waveform& gen,
                                   const VocoderConfig& cfg,
                                   const std::optional<std::pair<EmbeddingStats, EmbeddingStats>>&
                                       embeddings = std::nullopt);

} // namespace voctk
