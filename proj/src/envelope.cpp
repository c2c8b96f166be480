#include "voctk/envelope.hpp"

#include <cmath>
#include <complex>

#include "voctk/fft.hpp"

namespace voctk {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

EnvelopeMode envelope_mode_from_int(int tag) {
    switch (tag) {
        case -1: return EnvelopeMode::lower;
        case 0: return EnvelopeMode::identity;
        case 1: return EnvelopeMode::upper;
        case 300: return EnvelopeMode::lpf300;
        case 500: return EnvelopeMode::lpf500;
    }
    throw validation_error("envelope mode must be one of {-1, 0, 1, 300, 500}, got " +
                           std::to_string(tag));
}

AnalyticSignal analytic_signal(const Waveform& w) {
    validate(w);
    const std::size_t n = w.samples.size();
    if (n < 2) throw validation_error("analytic_signal: need at least 2 samples");

    auto spec = fft_real(w.samples);
    // Odd lengths have no Nyquist bin; only DC stays single there.
    const std::size_t half = n / 2;
    const bool even = (n % 2 == 0);
    for (std::size_t k = 1; k < half; ++k) spec[k] *= 2.0;
    if (!even && half >= 1) spec[half] *= 2.0;
    for (std::size_t k = half + 1; k < n; ++k) spec[k] = cdouble(0.0, 0.0);

    auto z = ifft(std::move(spec));
    AnalyticSignal out;
    out.real_part.resize(n);
    out.imag_part.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.real_part[i] = z[i].real();
        out.imag_part[i] = z[i].imag();
    }
    return out;
}

std::vector<double> instantaneous_amplitude(const AnalyticSignal& a) {
    if (a.real_part.size() != a.imag_part.size())
        throw validation_error("analytic signal parts must have equal length");
    std::vector<double> amp(a.real_part.size());
    for (std::size_t i = 0; i < amp.size(); ++i)
        amp[i] = std::hypot(a.real_part[i], a.imag_part[i]);
    return amp;
}

double ButterworthFilter::magnitude(double hz) const {
    const cdouble z = std::polar(1.0, 2.0 * kPi * hz / sample_rate);
    const cdouble zi = 1.0 / z;
    cdouble h(1.0, 0.0);
    for (const auto& s : sections) {
        h *= (s.b0 + s.b1 * zi + s.b2 * zi * zi) / (1.0 + s.a1 * zi + s.a2 * zi * zi);
    }
    return std::abs(h);
}

ButterworthFilter butterworth_lowpass(int order, double cutoff_hz, int sample_rate) {
    if (order < 1) throw validation_error("butterworth: order must be >= 1");
    if (sample_rate <= 0) throw validation_error("butterworth: sample rate must be positive");
    if (!(cutoff_hz > 0.0 && cutoff_hz < sample_rate / 2.0))
        throw validation_error("butterworth: cutoff must lie in (0, sample_rate/2)");

    ButterworthFilter f;
    f.order = order;
    f.cutoff_hz = cutoff_hz;
    f.sample_rate = sample_rate;

    // Prewarped analog cutoff so the bilinear transform lands the -3 dB
    // point exactly at cutoff_hz.
    const double fs2 = 2.0 * sample_rate;
    const double warped = fs2 * std::tan(kPi * cutoff_hz / sample_rate);

    // Analog prototype poles on the unit circle, scaled by the warped cutoff,
    // then mapped with z = (fs2 + s) / (fs2 - s). Conjugate pairs become one
    // biquad; an odd order adds a first-order section (b2 = a2 = 0).
    auto bilinear = [&](cdouble s) { return (fs2 + s) / (fs2 - s); };

    for (int k = 0; k < order / 2; ++k) {
        const double theta = kPi * (2.0 * k + 1.0) / (2.0 * order) + kPi / 2.0;
        const cdouble pole_s = warped * std::polar(1.0, theta);
        const cdouble pole_z = bilinear(pole_s);
        BiquadSection sec;
        sec.a1 = -2.0 * pole_z.real();
        sec.a2 = std::norm(pole_z);
        sec.b0 = 1.0;
        sec.b1 = 2.0;
        sec.b2 = 1.0;
        f.sections.push_back(sec);
    }
    if (order % 2 == 1) {
        const cdouble pole_z = bilinear(cdouble(-warped, 0.0));
        BiquadSection sec;
        sec.a1 = -pole_z.real();
        sec.a2 = 0.0;
        sec.b0 = 1.0;
        sec.b1 = 1.0;
        sec.b2 = 0.0;
        f.sections.push_back(sec);
    }

    // Normalize each section to unit DC gain, making |H(0)| exactly 1.
    for (auto& sec : f.sections) {
        const double num = sec.b0 + sec.b1 + sec.b2;
        const double den = 1.0 + sec.a1 + sec.a2;
        const double g = den / num;
        sec.b0 *= g;
        sec.b1 *= g;
        sec.b2 *= g;
    }
    return f;
}

Waveform filter_apply(const ButterworthFilter& f, const Waveform& w) {
    validate(w);
    if (w.sample_rate != f.sample_rate)
        throw validation_error("filter_apply: waveform rate " + std::to_string(w.sample_rate) +
                               " does not match filter rate " + std::to_string(f.sample_rate));
    Waveform out = w;
    for (const auto& s : f.sections) {
        double z1 = 0.0, z2 = 0.0;
        for (double& x : out.samples) {
            const double y = s.b0 * x + z1;
            z1 = s.b1 * x - s.a1 * y + z2;
            z2 = s.b2 * x - s.a2 * y;
            x = y;
        }
    }
    return out;
}

Waveform extract_envelope(const Waveform& w, EnvelopeMode mode, int filter_order) {
    validate(w);
    if (mode == EnvelopeMode::identity) return w;
    if (w.samples.size() < 2) throw validation_error("extract_envelope: need at least 2 samples");

    Waveform out;
    out.sample_rate = w.sample_rate;
    switch (mode) {
        case EnvelopeMode::lower:
        case EnvelopeMode::upper: {
            out.samples = instantaneous_amplitude(analytic_signal(w));
            if (mode == EnvelopeMode::lower)
                for (double& v : out.samples) v = -v;
            break;
        }
        case EnvelopeMode::lpf300:
        case EnvelopeMode::lpf500: {
            const double cutoff = (mode == EnvelopeMode::lpf300) ? 300.0 : 500.0;
            auto filt = butterworth_lowpass(filter_order, cutoff, w.sample_rate);
            out.samples = instantaneous_amplitude(analytic_signal(filter_apply(filt, w)));
            break;
        }
        default:
            throw validation_error("extract_envelope: invalid mode");
    }
    return out;
}

} // namespace voctk
