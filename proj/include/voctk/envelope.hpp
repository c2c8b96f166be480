#pragma once

#include <vector>

#include "voctk/waveform.hpp"

namespace voctk {

// The five envelope extraction modes:
//   -1  lower envelope, -|H(x)|
//    0  identity (signal passed through)
//   +1  upper envelope, |H(x)| (instantaneous amplitude)
//  300  |H(butterworth_lpf(x, 300 Hz))|
//  500  |H(butterworth_lpf(x, 500 Hz))|
enum class EnvelopeMode : int {
    lower = -1,
    identity = 0,
    upper = 1,
    lpf300 = 300,
    lpf500 = 500,
};

EnvelopeMode envelope_mode_from_int(int tag);

inline constexpr EnvelopeMode kEnvelopeModes[] = {
    EnvelopeMode::lower, EnvelopeMode::identity, EnvelopeMode::upper,
    EnvelopeMode::lpf300, EnvelopeMode::lpf500};

// Default Butterworth order for the 300/500 Hz modes.
inline constexpr int kEnvelopeFilterOrder = 4;

struct AnalyticSignal {
    std::vector<double> real_part;
    std::vector<double> imag_part;
};

// FFT construction: keep DC (and Nyquist for even lengths), double the
// positive frequencies, zero the negative ones. Requires length >= 2.
AnalyticSignal analytic_signal(const Waveform& w);

// Pointwise sqrt(real^2 + imag^2).
std::vector<double> instantaneous_amplitude(const AnalyticSignal& a);

struct BiquadSection {
    // H(z) = (b0 + b1 z^-1 + b2 z^-2) / (1 + a1 z^-1 + a2 z^-2)
    double b0, b1, b2, a1, a2;
};

struct ButterworthFilter {
    int order = 0;
    double cutoff_hz = 0.0;
    int sample_rate = 0;
    std::vector<BiquadSection> sections;

    // Magnitude response at frequency hz.
    double magnitude(double hz) const;
};

// Bilinear-transform lowpass design with frequency prewarping; DC gain is
// normalized to exactly 1 and the cutoff sits at -3.01 dB.
ButterworthFilter butterworth_lowpass(int order, double cutoff_hz, int sample_rate);

// Causal forward filtering through the SOS cascade (transposed direct form
// II); output length equals input length.
Waveform filter_apply(const ButterworthFilter& f, const Waveform& w);

Waveform extract_envelope(const Waveform& w, EnvelopeMode mode,
                          int filter_order = kEnvelopeFilterOrder);

} // namespace voctk
