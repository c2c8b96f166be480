#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "voctk/metrics.hpp"

using namespace voctk;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::mt19937_64& rng() {
    static std::mt19937_64 eng(424242);
    return eng;
}

double uni(double lo, double hi) {
    return lo + (hi - lo) * ((rng()() >> 11) * (1.0 / 9007199254740992.0));
}

MatrixD random_frames(std::size_t n, std::size_t d) {
    MatrixD m(n, d);
    for (auto& v : m.data) v = uni(-2.0, 2.0);
    return m;
}

double euclid(const MatrixD& a, std::size_t i, const MatrixD& b, std::size_t j) {
    double acc = 0.0;
    for (std::size_t k = 0; k < a.cols; ++k) {
        const double d = a.at(i, k) - b.at(j, k);
        acc += d * d;
    }
    return std::sqrt(acc);
}

// Exhaustive minimum over all monotone boundary-complete paths.
double dtw_brute_force(const MatrixD& a, const MatrixD& b) {
    const std::size_t n = a.rows, m = b.rows;
    double best = 1e300;
    std::function<void(std::size_t, std::size_t, double)> walk = [&](std::size_t i, std::size_t j,
                                                                     double cost) {
        cost += euclid(a, i, b, j);
        if (cost >= best) return;
        if (i == n - 1 && j == m - 1) {
            best = cost;
            return;
        }
        if (i + 1 < n && j + 1 < m) walk(i + 1, j + 1, cost);
        if (j + 1 < m) walk(i, j + 1, cost);
        if (i + 1 < n) walk(i + 1, j, cost);
    };
    walk(0, 0, 0.0);
    return best;
}

VocoderConfig small_config() {
    VocoderConfig cfg;
    cfg.num_mels = 20;
    cfg.n_fft = 128;
    cfg.win_size = 128;
    cfg.hop_size = 32;
    cfg.sampling_rate = 24000;
    cfg.fmin = 0.0;
    cfg.fmax = 12000.0;
    cfg.segment_size = 256;
    cfg.upsample_rates = {8, 4};
    cfg.upsample_kernel_sizes = {16, 8};
    cfg.upsample_initial_channel = 8;
    cfg.resblock_kernel_sizes = {3};
    cfg.resblock_dilation_sizes = {{1, 3}};
    cfg.resolutions = {{128, 32, 64}, {64, 16, 32}};
    cfg.mpd_reshapes = {2};
    return cfg;
}

Waveform tone(double freq, int sr, std::size_t n, double amp = 0.8) {
    Waveform w;
    w.sample_rate = sr;
    w.samples.resize(n);
    for (std::size_t t = 0; t < n; ++t)
        w.samples[t] = amp * std::sin(2.0 * kPi * freq * static_cast<double>(t) / sr);
    return w;
}

} // namespace

TEST_CASE("dtw_align: identity, repeated frame, brute-force oracle") {
    SUBCASE("equal sequences take the diagonal at zero cost") {
        const MatrixD a = random_frames(6, 3);
        const DtwResult r = dtw_align(a, a);
        CHECK(r.cost == 0.0);
        REQUIRE(r.path.size() == 6);
        for (std::size_t i = 0; i < 6; ++i) {
            CHECK(r.path[i].first == i);
            CHECK(r.path[i].second == i);
        }
    }
    SUBCASE("[1] vs [1,1,1]: zero cost, path covers all of b") {
        MatrixD a(1, 1), b(3, 1);
        a.at(0, 0) = 1.0;
        for (int i = 0; i < 3; ++i) b.at(static_cast<std::size_t>(i), 0) = 1.0;
        const DtwResult r = dtw_align(a, b);
        CHECK(r.cost == 0.0);
        REQUIRE(r.path.size() == 3);
        CHECK(r.path.back().second == 2);
    }
    SUBCASE("random 6x7 equals exhaustive enumeration") {
        for (int trial = 0; trial < 20; ++trial) {
            const MatrixD a = random_frames(6, 2);
            const MatrixD b = random_frames(7, 2);
            const DtwResult r = dtw_align(a, b);
            CHECK(r.cost == doctest::Approx(dtw_brute_force(a, b)).epsilon(1e-12));
        }
    }
    SUBCASE("all sizes up to 8x8 match the oracle") {
        for (std::size_t n = 1; n <= 8; ++n)
            for (std::size_t m = 1; m <= 8; ++m) {
                const MatrixD a = random_frames(n, 2);
                const MatrixD b = random_frames(m, 2);
                CHECK(dtw_align(a, b).cost ==
                      doctest::Approx(dtw_brute_force(a, b)).epsilon(1e-12));
            }
    }
    SUBCASE("path is monotone and boundary-complete") {
        const MatrixD a = random_frames(9, 2);
        const MatrixD b = random_frames(5, 2);
        const DtwResult r = dtw_align(a, b);
        CHECK(r.path.front() == std::make_pair(std::size_t{0}, std::size_t{0}));
        CHECK(r.path.back() == std::make_pair(std::size_t{8}, std::size_t{4}));
        for (std::size_t i = 1; i < r.path.size(); ++i) {
            const auto [pi, pj] = r.path[i - 1];
            const auto [ci, cj] = r.path[i];
            CHECK(ci >= pi);
            CHECK(cj >= pj);
            CHECK(ci - pi <= 1);
            CHECK(cj - pj <= 1);
            CHECK(ci + cj > pi + pj);
        }
    }
}

TEST_CASE("mcd: identity, symmetry") {
    const VocoderConfig cfg = small_config();
    std::mt19937_64 eng(8);
    Waveform a, b;
    a.sample_rate = b.sample_rate = cfg.sampling_rate;
    for (int i = 0; i < 2000; ++i) {
        a.samples.push_back(0.4 * std::sin(0.02 * i) + 0.1 * uni(-1, 1));
        b.samples.push_back(0.4 * std::sin(0.021 * i) + 0.1 * uni(-1, 1));
    }
    CHECK(mcd(a, a, cfg) == 0.0);
    const double ab = mcd(a, b, cfg);
    CHECK(ab > 0.0);
    CHECK(ab == doctest::Approx(mcd(b, a, cfg)).epsilon(1e-12));
}

TEST_CASE("m_stft_loss: identity, zero-generator convergence, nonnegativity") {
    const VocoderConfig cfg = small_config();
    const Waveform t = tone(750.0, cfg.sampling_rate, 3000);
    CHECK(m_stft_loss(t, t, cfg.resolutions) == 0.0);

    SUBCASE("zero generated signal: spectral convergence term is exactly 1") {
        Waveform z;
        z.sample_rate = cfg.sampling_rate;
        z.samples.assign(t.samples.size(), 0.0);
        // expected = 1 + mean |log(clamp(S_r)) - log(floor)| per resolution
        double expected = 0.0;
        for (const auto& res : cfg.resolutions) {
            const Spectrogram sr = stft(t, StftPlan{res[0], res[1], res[2], true});
            double logl1 = 0.0;
            for (double v : sr.values.data)
                logl1 += std::abs(std::log(std::max(v, kLogClampFloor)) - std::log(kLogClampFloor));
            expected += 1.0 + logl1 / static_cast<double>(sr.values.data.size());
        }
        expected /= static_cast<double>(cfg.resolutions.size());
        CHECK(m_stft_loss(t, z, cfg.resolutions) == doctest::Approx(expected).epsilon(1e-12));
    }
    SUBCASE("nonnegative on random pairs") {
        std::mt19937_64 eng(3);
        for (int trial = 0; trial < 5; ++trial) {
            Waveform a, b;
            a.sample_rate = b.sample_rate = cfg.sampling_rate;
            for (int i = 0; i < 900; ++i) {
                a.samples.push_back(uni(-1, 1));
                b.samples.push_back(uni(-1, 1));
            }
            CHECK(m_stft_loss(a, b, cfg.resolutions) >= 0.0);
        }
    }
    SUBCASE("zero reference is reported") {
        Waveform z;
        z.sample_rate = cfg.sampling_rate;
        z.samples.assign(1000, 0.0);
        CHECK_THROWS_AS(m_stft_loss(z, t, cfg.resolutions), validation_error);
    }
}

namespace {

// Direct windowed-formula SSIM over a fully materialized map; independent
// reimplementation used as the oracle for small cases.
double ssim_direct(const MatrixD& a, const MatrixD& b) {
    double lo = a.at(0, 0), hi = lo;
    for (std::size_t i = 0; i < a.data.size(); ++i) {
        lo = std::min({lo, a.data[i], b.data[i]});
        hi = std::max({hi, a.data[i], b.data[i]});
    }
    auto norm = [&](double v) { return hi > lo ? (v - lo) / (hi - lo) : 0.0; };

    std::vector<double> win(121);
    double wsum = 0.0;
    for (int i = 0; i < 11; ++i)
        for (int j = 0; j < 11; ++j) {
            const double v =
                std::exp(-((i - 5.0) * (i - 5.0) + (j - 5.0) * (j - 5.0)) / (2.0 * 2.25));
            win[static_cast<std::size_t>(i * 11 + j)] = v;
            wsum += v;
        }
    for (auto& v : win) v /= wsum;

    double total = 0.0;
    std::size_t cnt = 0;
    for (std::size_t r = 0; r + 11 <= a.rows; ++r)
        for (std::size_t c = 0; c + 11 <= a.cols; ++c) {
            double mua = 0, mub = 0, va = 0, vb = 0, cov = 0;
            for (int i = 0; i < 11; ++i)
                for (int j = 0; j < 11; ++j) {
                    const double w = win[static_cast<std::size_t>(i * 11 + j)];
                    mua += w * norm(a.at(r + static_cast<std::size_t>(i), c + static_cast<std::size_t>(j)));
                    mub += w * norm(b.at(r + static_cast<std::size_t>(i), c + static_cast<std::size_t>(j)));
                }
            for (int i = 0; i < 11; ++i)
                for (int j = 0; j < 11; ++j) {
                    const double w = win[static_cast<std::size_t>(i * 11 + j)];
                    const double da =
                        norm(a.at(r + static_cast<std::size_t>(i), c + static_cast<std::size_t>(j))) - mua;
                    const double db =
                        norm(b.at(r + static_cast<std::size_t>(i), c + static_cast<std::size_t>(j))) - mub;
                    va += w * da * da;
                    vb += w * db * db;
                    cov += w * da * db;
                }
            total += ((2 * mua * mub + 1e-4) * (2 * cov + 9e-4)) /
                     ((mua * mua + mub * mub + 1e-4) * (va + vb + 9e-4));
            ++cnt;
        }
    return total / static_cast<double>(cnt);
}

MelSpectrogram as_mel(const MatrixD& m) {
    MelSpectrogram out;
    out.values = m;
    return out;
}

} // namespace

TEST_CASE("ssim_mel: identity, contrast inversion, 12x12 oracle, symmetry") {
    MatrixD a(12, 12), b(12, 12);
    for (std::size_t i = 0; i < a.data.size(); ++i) {
        a.data[i] = uni(-3.0, 3.0);
        b.data[i] = uni(-3.0, 3.0);
    }
    CHECK(ssim_mel(as_mel(a), as_mel(a)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ssim_mel(as_mel(a), as_mel(b)) ==
          doctest::Approx(ssim_mel(as_mel(b), as_mel(a))).epsilon(1e-12));
    CHECK(ssim_mel(as_mel(a), as_mel(b)) == doctest::Approx(ssim_direct(a, b)).epsilon(1e-9));

    SUBCASE("inverted contrast scores below 1") {
        MatrixD inv(12, 12);
        for (std::size_t i = 0; i < a.data.size(); ++i) inv.data[i] = -a.data[i] + 0.5;
        CHECK(ssim_mel(as_mel(a), as_mel(inv)) < 1.0);
    }
    SUBCASE("constant pair is stable, not a division error") {
        MatrixD c1(12, 12, 0.7), c2(12, 12, 0.7);
        CHECK(ssim_mel(as_mel(c1), as_mel(c2)) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("too-small inputs rejected") {
        MatrixD tiny(8, 8, 0.0);
        CHECK_THROWS_AS(ssim_mel(as_mel(tiny), as_mel(tiny)), validation_error);
    }
}

TEST_CASE("pcc_mel: identity, affine invariance, anticorrelation, degenerate input") {
    MatrixD a(15, 30);
    for (auto& v : a.data) v = uni(-2.0, 2.0);

    CHECK(pcc_mel(as_mel(a), as_mel(a)) == doctest::Approx(1.0).epsilon(1e-12));

    MatrixD affine = a;
    for (auto& v : affine.data) v = 2.0 * v + 3.0;
    CHECK(std::abs(pcc_mel(as_mel(a), as_mel(affine)) - 1.0) <= 1e-12);

    MatrixD neg = a;
    for (auto& v : neg.data) v = -v;
    CHECK(std::abs(pcc_mel(as_mel(a), as_mel(neg)) + 1.0) <= 1e-12);

    MatrixD flat(15, 30, 1.0);
    CHECK_THROWS_AS(pcc_mel(as_mel(a), as_mel(flat)), validation_error);
}

TEST_CASE("pitch_track and periodicity_error on synthetic extremes") {
    const int sr = 24000;
    const Waveform t220 = tone(220.0, sr, sr); // one second

    SUBCASE("pure 220 Hz tone recovered within 1%") {
        const PitchTrack track = pitch_track(t220);
        REQUIRE(!track.f0.empty());
        for (std::size_t f = 0; f < track.f0.size(); ++f) {
            CHECK(std::abs(track.f0[f] - 220.0) / 220.0 < 0.01);
            CHECK(track.periodicity[f] > 0.9);
        }
    }
    SUBCASE("identical inputs have zero error") {
        CHECK(periodicity_error(t220, t220) == 0.0);
    }
    SUBCASE("tone vs white noise exceeds 0.5") {
        Waveform noise;
        noise.sample_rate = sr;
        noise.samples.resize(t220.samples.size());
        for (auto& s : noise.samples) s = 0.8 * uni(-1.0, 1.0);
        CHECK(periodicity_error(t220, noise) > 0.5);
    }
    SUBCASE("too-short audio is reported") {
        Waveform tiny;
        tiny.sample_rate = sr;
        tiny.samples.assign(100, 0.1);
        CHECK_THROWS_AS(pitch_track(tiny), validation_error);
    }
}

TEST_CASE("frechet_distance: identities and 1-D closed forms") {
    SUBCASE("identical stats give zero") {
        MatrixD e(6, 3);
        for (auto& v : e.data) v = uni(-1.0, 1.0);
        const EmbeddingStats s = embedding_stats(e);
        CHECK(frechet_distance(s, s) == doctest::Approx(0.0).epsilon(1e-9));
    }
    SUBCASE("1-D: means 0 and 1, unit variances -> 1") {
        EmbeddingStats a, b;
        a.mean = {0.0};
        b.mean = {1.0};
        a.covariance = MatrixD(1, 1);
        b.covariance = MatrixD(1, 1);
        a.covariance.at(0, 0) = 1.0;
        b.covariance.at(0, 0) = 1.0;
        a.n = b.n = 16;
        CHECK(frechet_distance(a, b) == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("1-D: equal means, sigma 1 vs 2 -> 1") {
        EmbeddingStats a, b;
        a.mean = {3.0};
        b.mean = {3.0};
        a.covariance = MatrixD(1, 1);
        b.covariance = MatrixD(1, 1);
        a.covariance.at(0, 0) = 1.0;
        b.covariance.at(0, 0) = 4.0;
        a.n = b.n = 16;
        CHECK(frechet_distance(a, b) == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("symmetric in its arguments") {
        MatrixD ea(20, 4), eb(20, 4);
        for (auto& v : ea.data) v = uni(-1.0, 1.0);
        for (auto& v : eb.data) v = 0.5 + uni(-1.0, 1.0);
        const EmbeddingStats sa = embedding_stats(ea);
        const EmbeddingStats sb = embedding_stats(eb);
        CHECK(frechet_distance(sa, sb) == doctest::Approx(frechet_distance(sb, sa)).epsilon(1e-9));
        CHECK(frechet_distance(sa, sb) > 0.0);
    }
    SUBCASE("dimension mismatch and non-PSD inputs rejected") {
        EmbeddingStats a, b;
        a.mean = {0.0, 0.0};
        a.covariance = MatrixD(2, 2);
        a.covariance.at(0, 0) = a.covariance.at(1, 1) = 1.0;
        b.mean = {0.0};
        b.covariance = MatrixD(1, 1, 1.0);
        a.n = b.n = 4;
        CHECK_THROWS_AS(frechet_distance(a, b), validation_error);

        EmbeddingStats bad = a;
        bad.covariance.at(0, 0) = -1.0;
        CHECK_THROWS_AS(frechet_distance(bad, a), validation_error);
    }
}

TEST_CASE("embedding_stats worked examples") {
    SUBCASE("two identical rows give zero covariance") {
        MatrixD e(2, 3);
        for (std::size_t j = 0; j < 3; ++j) {
            e.at(0, j) = 0.5 * static_cast<double>(j);
            e.at(1, j) = 0.5 * static_cast<double>(j);
        }
        const EmbeddingStats s = embedding_stats(e);
        for (double v : s.covariance.data) CHECK(v == 0.0);
    }
    SUBCASE("rows [0],[2]: mean 1, unbiased variance 2") {
        MatrixD e(2, 1);
        e.at(0, 0) = 0.0;
        e.at(1, 0) = 2.0;
        const EmbeddingStats s = embedding_stats(e);
        CHECK(s.mean[0] == 1.0);
        CHECK(s.covariance.at(0, 0) == 2.0);
    }
    SUBCASE("row order does not matter") {
        MatrixD e(5, 2), shuffled(5, 2);
        for (auto& v : e.data) v = uni(-1, 1);
        const std::size_t perm[5] = {3, 0, 4, 1, 2};
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 2; ++j) shuffled.at(i, j) = e.at(perm[i], j);
        const EmbeddingStats s1 = embedding_stats(e);
        const EmbeddingStats s2 = embedding_stats(shuffled);
        for (std::size_t j = 0; j < 2; ++j) CHECK(s1.mean[j] == doctest::Approx(s2.mean[j]).epsilon(1e-12));
        for (std::size_t i = 0; i < s1.covariance.data.size(); ++i)
            CHECK(s1.covariance.data[i] == doctest::Approx(s2.covariance.data[i]).epsilon(1e-12));
    }
    SUBCASE("fewer than two rows rejected") {
        MatrixD e(1, 3, 0.0);
        CHECK_THROWS_AS(embedding_stats(e), validation_error);
    }
}

TEST_CASE("length_consistency: logged numbers, boundaries, doubled output") {
    const LengthReport r = length_consistency(16717, 4279552, 256, 24000);
    CHECK(r.expected_len == 4279552);
    CHECK(r.diff == 0);
    CHECK(r.diff_seconds == 0.0);
    CHECK(r.pass);

    CHECK_FALSE(length_consistency(16717, 2 * 4279552, 256).pass);
    CHECK(length_consistency(100, 100 * 256 + 256, 256).pass);        // diff == hop passes
    CHECK_FALSE(length_consistency(100, 100 * 256 + 257, 256).pass);  // one past fails
    CHECK_THROWS_AS(length_consistency(0, 10, 256), validation_error);
}

TEST_CASE("compute_metric_report populates every field and hits identities") {
    const VocoderConfig cfg = small_config();
    Waveform ref = tone(440.0, cfg.sampling_rate, 24000);
    for (std::size_t i = 0; i < ref.samples.size(); ++i)
        ref.samples[i] += 0.2 * std::sin(2.0 * kPi * 97.0 * static_cast<double>(i) / cfg.sampling_rate);

    MatrixD ea(8, 2), eb(8, 2);
    for (auto& v : ea.data) v = uni(-1, 1);
    for (auto& v : eb.data) v = uni(-1, 1);
    const auto emb = std::make_pair(embedding_stats(ea), embedding_stats(eb));

    const MetricReport same = compute_metric_report(ref, ref, cfg, emb);
    CHECK(same.mcd == 0.0);
    CHECK(same.m_stft == 0.0);
    CHECK(same.ssim == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(same.pcc == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(same.periodicity == 0.0);
    REQUIRE(same.fad.has_value());
    CHECK(*same.fad >= 0.0);
    CHECK_FALSE(same.provenance.empty());

    SUBCASE("identical embeddings give FAD 0") {
        const auto emb_same = std::make_pair(embedding_stats(ea), embedding_stats(ea));
        const MetricReport r = compute_metric_report(ref, ref, cfg, emb_same);
        CHECK(*r.fad == doctest::Approx(0.0).epsilon(1e-9));
    }
    SUBCASE("noise degrades similarity metrics and inflates distances") {
        Waveform noisy = ref;
        for (auto& s : noisy.samples) s += 0.05 * uni(-1.0, 1.0);
        const MetricReport r = compute_metric_report(ref, noisy, cfg);
        CHECK(r.mcd > 0.0);
        CHECK(r.m_stft > 0.0);
        CHECK(r.ssim < 1.0);
        CHECK(r.pcc < 1.0);
    }
}
