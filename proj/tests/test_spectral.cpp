#include <doctest.h>

#include <cmath>
#include <random>

#include "voctk/fft.hpp"
#include "voctk/spectral.hpp"

using namespace voctk;

namespace {

constexpr double kPi = 3.14159265358979323846;

Waveform tone(double freq, int sr, std::size_t n, double amp = 1.0) {
    Waveform w;
    w.sample_rate = sr;
    w.samples.resize(n);
    for (std::size_t t = 0; t < n; ++t)
        w.samples[t] = amp * std::cos(2.0 * kPi * freq * static_cast<double>(t) / sr);
    return w;
}

VocoderConfig reference_config() {
    static const VocoderConfig cfg = load_config(std::string(VOCTK_DATA_DIR) + "/config_v1.json");
    return cfg;
}

// Reimplements the documented framing contract (reflect pad by n_fft/2,
// periodic Hann centered in the frame) so Parseval can be checked against
// the raw DFT, independent of the stft() path.
std::vector<double> windowed_frame(const Waveform& w, const StftPlan& plan, std::size_t frame) {
    const long long n = static_cast<long long>(w.samples.size());
    const int pad = plan.n_fft / 2;
    auto reflect = [&](long long i) {
        if (n == 1) return std::size_t{0};
        const long long period = 2 * (n - 1);
        long long m = i % period;
        if (m < 0) m += period;
        if (m >= n) m = period - m;
        return static_cast<std::size_t>(m);
    };
    std::vector<double> win(static_cast<std::size_t>(plan.n_fft), 0.0);
    const auto hann = hann_window(plan.win);
    const int off = (plan.n_fft - plan.win) / 2;
    for (int i = 0; i < plan.win; ++i) win[static_cast<std::size_t>(off + i)] = hann[static_cast<std::size_t>(i)];

    std::vector<double> out(static_cast<std::size_t>(plan.n_fft));
    const long long start = static_cast<long long>(frame) * plan.hop - pad;
    for (int i = 0; i < plan.n_fft; ++i) {
        const long long src = start + i;
        const double s = (src >= 0 && src < n) ? w.samples[static_cast<std::size_t>(src)]
                                               : w.samples[reflect(src)];
        out[static_cast<std::size_t>(i)] = s * win[static_cast<std::size_t>(i)];
    }
    return out;
}

} // namespace

TEST_CASE("fft matches a naive DFT for mixed radix-2 and Bluestein lengths") {
    std::mt19937_64 eng(77);
    for (std::size_t n : {std::size_t{1}, std::size_t{2}, std::size_t{3}, std::size_t{16},
                          std::size_t{17}, std::size_t{31}, std::size_t{60}, std::size_t{64},
                          std::size_t{97}}) {
        std::vector<cdouble> x(n);
        for (auto& v : x)
            v = cdouble((eng() >> 11) * (2.0 / 9007199254740992.0) - 1.0,
                        (eng() >> 11) * (2.0 / 9007199254740992.0) - 1.0);
        const auto got = fft(x);
        for (std::size_t k = 0; k < n; ++k) {
            cdouble want(0.0, 0.0);
            for (std::size_t t = 0; t < n; ++t)
                want += x[t] * std::polar(1.0, -2.0 * kPi * static_cast<double>(k) *
                                                   static_cast<double>(t) / static_cast<double>(n));
            CHECK(std::abs(got[k] - want) < 1e-9 * std::max(1.0, std::abs(want)));
        }
        // inverse round trip
        const auto back = ifft(got);
        for (std::size_t t = 0; t < n; ++t) CHECK(std::abs(back[t] - x[t]) < 1e-12);
    }
}

TEST_CASE("stft frame count is floor(len/hop)+1 across random lengths") {
    std::mt19937_64 eng(31);
    StftPlan plan{256, 64, 256, true};
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t len = 1 + eng() % 5000;
        Waveform w;
        w.sample_rate = 8000;
        w.samples.assign(len, 0.1);
        const Spectrogram s = stft(w, plan);
        CHECK(s.values.cols == len / static_cast<std::size_t>(plan.hop) + 1);
        CHECK(s.values.rows == 129);
    }
}

TEST_CASE("stft of zero signal is all-zero magnitude") {
    Waveform w;
    w.sample_rate = 24000;
    w.samples.assign(3000, 0.0);
    const Spectrogram s = stft(w, StftPlan{1024, 256, 1024, true});
    for (double v : s.values.data) CHECK(v == 0.0);
}

TEST_CASE("bin-centered tone leaks below the Hann first sidelobe outside the main lobe") {
    const int sr = 24000;
    StftPlan plan{1024, 256, 1024, true};
    const int bin = 96;
    const Waveform w = tone(static_cast<double>(bin) * sr / plan.n_fft, sr, 8192);
    const Spectrogram s = stft(w, plan);

    // Interior frames only; reflect padding breaks the tone's phase at the edges.
    for (std::size_t f = 4; f + 4 < s.values.cols; ++f) {
        const double peak = s.values.at(static_cast<std::size_t>(bin), f);
        REQUIRE(peak > 0.0);
        for (std::size_t k = 0; k < s.values.rows; ++k) {
            if (std::llabs(static_cast<long long>(k) - bin) <= 2) continue;
            CHECK(20.0 * std::log10(s.values.at(k, f) / peak) < -31.5);
        }
    }
}

TEST_CASE("impulse at a frame center gives a flat Hann-weighted spectrum") {
    const int sr = 24000;
    StftPlan plan{512, 128, 512, true};
    Waveform w;
    w.sample_rate = sr;
    w.samples.assign(2048, 0.0);
    w.samples[static_cast<std::size_t>(plan.hop) * 8] = 1.0; // center of frame 8
    const Spectrogram s = stft(w, plan);
    const auto hann = hann_window(plan.win);
    const double expected = hann[static_cast<std::size_t>(plan.win / 2)];
    for (std::size_t k = 0; k < s.values.rows; ++k)
        CHECK(s.values.at(k, 8) == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("Parseval holds per frame") {
    std::mt19937_64 eng(5);
    Waveform w;
    w.sample_rate = 24000;
    for (int i = 0; i < 4000; ++i)
        w.samples.push_back((eng() >> 11) * (2.0 / 9007199254740992.0) - 1.0);
    StftPlan plan{512, 128, 512, true};
    const Spectrogram s = stft(w, plan);

    for (std::size_t f = 0; f < s.values.cols; f += 7) {
        const auto frame = windowed_frame(w, plan, f);
        double time_energy = 0.0;
        for (double v : frame) time_energy += v * v;
        const auto spec = fft_real(frame);
        double freq_energy = 0.0;
        for (const auto& c : spec) freq_energy += std::norm(c);
        freq_energy /= static_cast<double>(plan.n_fft);
        CHECK(std::abs(time_energy - freq_energy) <=
              1e-6 * std::max(1e-30, std::abs(time_energy)));

        // The one-sided stft magnitudes agree with the raw DFT moduli.
        for (std::size_t k = 0; k < s.values.rows; ++k)
            CHECK(s.values.at(k, f) == doctest::Approx(std::abs(spec[k])).epsilon(1e-9));
    }
}

TEST_CASE("mel filterbank: shape, nonnegativity, contiguous support, coverage") {
    const VocoderConfig cfg = reference_config();
    const MatrixD fb = mel_filterbank(cfg);
    CHECK(fb.rows == 80);
    CHECK(fb.cols == 513);

    const double hz_per_bin = static_cast<double>(cfg.sampling_rate) / cfg.n_fft;
    for (std::size_t m = 0; m < fb.rows; ++m) {
        bool in_support = false, left_support = false;
        for (std::size_t k = 0; k < fb.cols; ++k) {
            const double v = fb.at(m, k);
            CHECK(v >= 0.0);
            if (v > 0.0) {
                CHECK_FALSE(left_support); // support is one contiguous run
                in_support = true;
                const double f = static_cast<double>(k) * hz_per_bin;
                CHECK(f >= cfg.fmin);
                CHECK(f <= cfg.fmax);
            } else if (in_support) {
                left_support = true;
                in_support = false;
            }
        }
    }

    // Full coverage strictly inside (fmin, fmax): column sums positive.
    for (std::size_t k = 1; k < fb.cols; ++k) {
        const double f = static_cast<double>(k) * hz_per_bin;
        if (f < cfg.fmin + 2 * hz_per_bin || f > cfg.fmax - 2 * hz_per_bin) continue;
        double colsum = 0.0;
        for (std::size_t m = 0; m < fb.rows; ++m) colsum += fb.at(m, k);
        CHECK(colsum > 0.0);
    }
}

TEST_CASE("mel_spectrogram: determinism, silence floor, frame relation") {
    const VocoderConfig cfg = reference_config();
    const Waveform w = tone(440.0, cfg.sampling_rate, 24000, 0.5);

    const MelSpectrogram a = mel_spectrogram(w, cfg);
    const MelSpectrogram b = mel_spectrogram(w, cfg);
    REQUIRE(a.values.data.size() == b.values.data.size());
    for (std::size_t i = 0; i < a.values.data.size(); ++i)
        CHECK(a.values.data[i] == b.values.data[i]); // bit-exact

    CHECK(a.values.rows == 80);
    // frames within +1 of len/hop
    const std::size_t expect = w.samples.size() / static_cast<std::size_t>(cfg.hop_size);
    CHECK(a.values.cols >= expect);
    CHECK(a.values.cols <= expect + 1);

    Waveform silence;
    silence.sample_rate = cfg.sampling_rate;
    silence.samples.assign(4096, 0.0);
    const MelSpectrogram s = mel_spectrogram(silence, cfg);
    for (double v : s.values.data) CHECK(v == doctest::Approx(std::log(1e-5)).epsilon(1e-12));

    Waveform wrong = w;
    wrong.sample_rate = 44100;
    CHECK_THROWS_AS(mel_spectrogram(wrong, cfg), validation_error);
}

TEST_CASE("mel frame count tracks samples/hop at long-file scale") {
    const VocoderConfig cfg = reference_config();
    // 97.05 s at 24 kHz
    const std::size_t n = static_cast<std::size_t>(97.05 * 24000.0);
    Waveform w;
    w.sample_rate = cfg.sampling_rate;
    w.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        w.samples[i] = 0.3 * std::sin(2.0 * kPi * 130.0 * static_cast<double>(i) / 24000.0);
    const MelSpectrogram mel = mel_spectrogram(w, cfg);
    CHECK(mel.values.cols == n / static_cast<std::size_t>(cfg.hop_size) + 1);
    // the audit the CLI exposes: expected waveform length within one hop
    CHECK(std::llabs(static_cast<long long>(mel.values.cols) * cfg.hop_size -
                     static_cast<long long>(n)) <= cfg.hop_size);
}

TEST_CASE("multi_resolution_spectrograms follows the resolution list") {
    const VocoderConfig cfg = reference_config();
    const Waveform w = tone(1000.0, cfg.sampling_rate, 6000, 0.4);
    const auto specs = multi_resolution_spectrograms(w, cfg.resolutions);
    REQUIRE(specs.size() == 3);
    CHECK(specs[0].values.rows == 513);
    CHECK(specs[1].values.rows == 1025);
    CHECK(specs[2].values.rows == 257);
    for (const auto& s : specs) CHECK(s.kind == SpectrogramKind::log);

    SUBCASE("singleton list") {
        const auto one = multi_resolution_spectrograms(w, {Resolution{512, 128, 256}});
        CHECK(one.size() == 1);
        CHECK(one[0].values.rows == 257);
    }
    SUBCASE("zero signal hits the log clamp floor") {
        Waveform z;
        z.sample_rate = cfg.sampling_rate;
        z.samples.assign(2048, 0.0);
        const auto specs_z = multi_resolution_spectrograms(z, {Resolution{256, 64, 128}});
        for (double v : specs_z[0].values.data)
            CHECK(v == doctest::Approx(std::log(1e-5)).epsilon(1e-12));
    }
    SUBCASE("empty resolution list is an error") {
        CHECK_THROWS_AS(multi_resolution_spectrograms(w, {}), validation_error);
    }
    SUBCASE("invalid triple is an error") {
        CHECK_THROWS_AS(multi_resolution_spectrograms(w, {Resolution{256, 0, 128}}),
                        validation_error);
    }
}
