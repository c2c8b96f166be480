#include "voctk/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "voctk/envelope.hpp"
#include "voctk/linalg.hpp"

namespace voctk {

namespace {

constexpr double kPi = 3.14159265358979323846;

double frame_distance(const MatrixD& a, std::size_t i, const MatrixD& b, std::size_t j) {
    double acc = 0.0;
    const double* ra = a.row(i);
    const double* rb = b.row(j);
    for (std::size_t d = 0; d < a.cols; ++d) {
        const double diff = ra[d] - rb[d];
        acc += diff * diff;
    }
    return std::sqrt(acc);
}

} // namespace

DtwResult dtw_align(const MatrixD& a, const MatrixD& b) {
    if (a.rows == 0 || b.rows == 0) throw validation_error("dtw_align: empty sequence");
    if (a.cols != b.cols) throw validation_error("dtw_align: frame dimensions differ");

    const std::size_t n = a.rows, m = b.rows;
    MatrixD acc(n, m);
    // 0 = diagonal, 1 = from left (j-1), 2 = from above (i-1)
    std::vector<unsigned char> step(n * m, 0);

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const double c = frame_distance(a, i, b, j);
            if (i == 0 && j == 0) {
                acc.at(i, j) = c;
            } else if (i == 0) {
                acc.at(i, j) = acc.at(i, j - 1) + c;
                step[i * m + j] = 1;
            } else if (j == 0) {
                acc.at(i, j) = acc.at(i - 1, j) + c;
                step[i * m + j] = 2;
            } else {
                const double diag = acc.at(i - 1, j - 1);
                const double left = acc.at(i, j - 1);
                const double up = acc.at(i - 1, j);
                double best = diag;
                unsigned char s = 0;
                if (left < best) { best = left; s = 1; }
                if (up < best) { best = up; s = 2; }
                acc.at(i, j) = best + c;
                step[i * m + j] = s;
            }
        }
    }

    DtwResult out;
    out.cost = acc.at(n - 1, m - 1);
    std::size_t i = n - 1, j = m - 1;
    while (true) {
        out.path.emplace_back(i, j);
        if (i == 0 && j == 0) break;
        switch (step[i * m + j]) {
            case 0: --i; --j; break;
            case 1: --j; break;
            case 2: --i; break;
        }
    }
    std::reverse(out.path.begin(), out.path.end());
    return out;
}

MatrixD mel_cepstra(const Waveform& w, const VocoderConfig& cfg) {
    const MelSpectrogram mel = mel_spectrogram(w, cfg);
    const std::size_t frames = mel.values.cols;
    const std::size_t bands = mel.values.rows;
    constexpr std::size_t kCoeffs = 13; // c1..c13, c0 dropped
    if (bands < kCoeffs + 1) throw validation_error("mel_cepstra: too few mel bands");

    // Orthonormal DCT-II basis over the mel axis.
    MatrixD basis(kCoeffs, bands);
    for (std::size_t k = 1; k <= kCoeffs; ++k) {
        const double scale = std::sqrt(2.0 / static_cast<double>(bands));
        for (std::size_t nidx = 0; nidx < bands; ++nidx)
            basis.at(k - 1, nidx) =
                scale * std::cos(kPi * (static_cast<double>(nidx) + 0.5) *
                                 static_cast<double>(k) / static_cast<double>(bands));
    }

    MatrixD out(frames, kCoeffs);
    for (std::size_t t = 0; t < frames; ++t) {
        for (std::size_t k = 0; k < kCoeffs; ++k) {
            double acc = 0.0;
            for (std::size_t nidx = 0; nidx < bands; ++nidx)
                acc += basis.at(k, nidx) * mel.values.at(nidx, t);
            out.at(t, k) = acc;
        }
    }
    return out;
}

double mcd(const Waveform& ref, const Waveform& gen, const VocoderConfig& cfg) {
    if (ref.samples.empty() || gen.samples.empty()) throw validation_error("mcd: empty audio");
    const MatrixD ca = mel_cepstra(ref, cfg);
    const MatrixD cb = mel_cepstra(gen, cfg);
    const DtwResult align = dtw_align(ca, cb);
    double acc = 0.0;
    for (const auto& [i, j] : align.path) acc += frame_distance(ca, i, cb, j);
    const double mean = acc / static_cast<double>(align.path.size());
    return (10.0 / std::log(10.0)) * std::sqrt(2.0) * mean;
}

double m_stft_loss(const Waveform& ref, const Waveform& gen,
                   const std::vector<Resolution>& resolutions) {
    if (resolutions.empty()) throw validation_error("m_stft_loss: no resolutions");
    if (ref.sample_rate != gen.sample_rate)
        throw validation_error("m_stft_loss: sample rates differ");
    const std::size_t n = std::min(ref.samples.size(), gen.samples.size());
    if (n == 0) throw validation_error("m_stft_loss: empty audio");
    Waveform r{std::vector<double>(ref.samples.begin(), ref.samples.begin() + static_cast<long long>(n)),
               ref.sample_rate};
    Waveform g{std::vector<double>(gen.samples.begin(), gen.samples.begin() + static_cast<long long>(n)),
               gen.sample_rate};

    double total = 0.0;
    for (const auto& res : resolutions) {
        StftPlan plan{res[0], res[1], res[2], true};
        const Spectrogram sr = stft(r, plan);
        const Spectrogram sg = stft(g, plan);

        double num = 0.0, den = 0.0, logl1 = 0.0;
        for (std::size_t i = 0; i < sr.values.data.size(); ++i) {
            const double dr = sr.values.data[i];
            const double dg = sg.values.data[i];
            num += (dr - dg) * (dr - dg);
            den += dr * dr;
            logl1 += std::abs(std::log(std::max(dr, kLogClampFloor)) -
                              std::log(std::max(dg, kLogClampFloor)));
        }
        if (den == 0.0)
            throw validation_error("m_stft_loss: zero reference spectrum, convergence undefined");
        total += std::sqrt(num) / std::sqrt(den) +
                 logl1 / static_cast<double>(sr.values.data.size());
    }
    return total / static_cast<double>(resolutions.size());
}

namespace {

// 11x11 Gaussian window, sigma 1.5, normalized to sum 1.
const std::vector<double>& ssim_window() {
    static const std::vector<double> win = [] {
        std::vector<double> w(11 * 11);
        double sum = 0.0;
        for (int i = 0; i < 11; ++i) {
            for (int j = 0; j < 11; ++j) {
                const double di = i - 5.0, dj = j - 5.0;
                const double v = std::exp(-(di * di + dj * dj) / (2.0 * 1.5 * 1.5));
                w[static_cast<std::size_t>(i) * 11 + j] = v;
                sum += v;
            }
        }
        for (auto& v : w) v /= sum;
        return w;
    }();
    return win;
}

} // namespace

double ssim_mel(const MelSpectrogram& ref, const MelSpectrogram& gen) {
    if (ref.values.rows != gen.values.rows)
        throw validation_error("ssim_mel: band counts differ");
    const std::size_t rows = ref.values.rows;
    const std::size_t cols = std::min(ref.values.cols, gen.values.cols);
    if (rows < 11 || cols < 11)
        throw validation_error("ssim_mel: inputs must be at least 11x11");

    // Joint min-max normalization to [0, 1].
    double lo = ref.values.at(0, 0), hi = lo;
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            lo = std::min({lo, ref.values.at(r, c), gen.values.at(r, c)});
            hi = std::max({hi, ref.values.at(r, c), gen.values.at(r, c)});
        }
    }
    const double range = hi - lo;
    MatrixD a(rows, cols), b(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            a.at(r, c) = range > 0.0 ? (ref.values.at(r, c) - lo) / range : 0.0;
            b.at(r, c) = range > 0.0 ? (gen.values.at(r, c) - lo) / range : 0.0;
        }
    }

    constexpr double C1 = 0.01 * 0.01; // (K1 L)^2 with L = 1
    constexpr double C2 = 0.03 * 0.03;
    const auto& win = ssim_window();

    double total = 0.0;
    std::size_t count = 0;
    for (std::size_t r = 0; r + 11 <= rows; ++r) {
        for (std::size_t c = 0; c + 11 <= cols; ++c) {
            double mu_a = 0.0, mu_b = 0.0;
            for (int i = 0; i < 11; ++i)
                for (int j = 0; j < 11; ++j) {
                    const double wv = win[static_cast<std::size_t>(i) * 11 + j];
                    mu_a += wv * a.at(r + static_cast<std::size_t>(i), c + static_cast<std::size_t>(j));
                    mu_b += wv * b.at(r + static_cast<std::size_t>(i), c + static_cast<std::size_t>(j));
                }
            double var_a = 0.0, var_b = 0.0, cov = 0.0;
            for (int i = 0; i < 11; ++i)
                for (int j = 0; j < 11; ++j) {
                    const double wv = win[static_cast<std::size_t>(i) * 11 + j];
                    const double da =
                        a.at(r + static_cast<std::size_t>(i), c + static_cast<std::size_t>(j)) - mu_a;
                    const double db =
                        b.at(r + static_cast<std::size_t>(i), c + static_cast<std::size_t>(j)) - mu_b;
                    var_a += wv * da * da;
                    var_b += wv * db * db;
                    cov += wv * da * db;
                }
            const double num = (2.0 * mu_a * mu_b + C1) * (2.0 * cov + C2);
            const double den = (mu_a * mu_a + mu_b * mu_b + C1) * (var_a + var_b + C2);
            total += num / den;
            ++count;
        }
    }
    return total / static_cast<double>(count);
}

double pcc_mel(const MelSpectrogram& ref, const MelSpectrogram& gen) {
    if (ref.values.rows != gen.values.rows)
        throw validation_error("pcc_mel: band counts differ");
    const std::size_t rows = ref.values.rows;
    const std::size_t cols = std::min(ref.values.cols, gen.values.cols);
    const double n = static_cast<double>(rows * cols);

    double ma = 0.0, mb = 0.0;
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            ma += ref.values.at(r, c);
            mb += gen.values.at(r, c);
        }
    ma /= n;
    mb /= n;

    double va = 0.0, vb = 0.0, cov = 0.0;
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            const double da = ref.values.at(r, c) - ma;
            const double db = gen.values.at(r, c) - mb;
            va += da * da;
            vb += db * db;
            cov += da * db;
        }
    if (va == 0.0 || vb == 0.0)
        throw validation_error("pcc_mel: zero-variance input, correlation undefined");
    return cov / std::sqrt(va * vb);
}

PitchTrack pitch_track(const Waveform& w) {
    validate(w);
    const int sr = w.sample_rate;
    const int tau_min = std::max(2, static_cast<int>(std::ceil(sr / 1100.0)));
    const int tau_max = static_cast<int>(std::ceil(sr / 50.0));
    const int win = tau_max;
    const int hop = std::max(1, static_cast<int>(std::lround(0.010 * sr)));
    const long long n = static_cast<long long>(w.samples.size());
    if (n < win + tau_max)
        throw validation_error("pitch_track: audio shorter than one analysis frame");

    PitchTrack out;
    std::vector<double> diff(static_cast<std::size_t>(tau_max) + 1);
    std::vector<double> cmndf(static_cast<std::size_t>(tau_max) + 1);

    for (long long t0 = 0; t0 + win + tau_max <= n; t0 += hop) {
        const double* x = w.samples.data() + t0;
        diff[0] = 0.0;
        double cum = 0.0;
        cmndf[0] = 1.0;
        for (int tau = 1; tau <= tau_max; ++tau) {
            double acc = 0.0;
            for (int j = 0; j < win; ++j) {
                const double d = x[j] - x[j + tau];
                acc += d * d;
            }
            diff[static_cast<std::size_t>(tau)] = acc;
            cum += acc;
            cmndf[static_cast<std::size_t>(tau)] =
                cum > 0.0 ? acc * tau / cum : 1.0;
        }

        // First dip under the YIN threshold, else the global minimum.
        constexpr double kThreshold = 0.1;
        int best = -1;
        for (int tau = tau_min; tau <= tau_max; ++tau) {
            if (cmndf[static_cast<std::size_t>(tau)] < kThreshold) {
                while (tau + 1 <= tau_max &&
                       cmndf[static_cast<std::size_t>(tau) + 1] < cmndf[static_cast<std::size_t>(tau)])
                    ++tau;
                best = tau;
                break;
            }
        }
        if (best < 0) {
            double mn = cmndf[static_cast<std::size_t>(tau_min)];
            best = tau_min;
            for (int tau = tau_min + 1; tau <= tau_max; ++tau) {
                if (cmndf[static_cast<std::size_t>(tau)] < mn) {
                    mn = cmndf[static_cast<std::size_t>(tau)];
                    best = tau;
                }
            }
        }

        // Parabolic refinement around the minimum.
        double tau_refined = best;
        if (best > tau_min && best < tau_max) {
            const double y0 = cmndf[static_cast<std::size_t>(best) - 1];
            const double y1 = cmndf[static_cast<std::size_t>(best)];
            const double y2 = cmndf[static_cast<std::size_t>(best) + 1];
            const double denom = y0 - 2.0 * y1 + y2;
            if (std::abs(denom) > 1e-12) tau_refined = best + 0.5 * (y0 - y2) / denom;
        }
        out.f0.push_back(static_cast<double>(sr) / tau_refined);
        out.periodicity.push_back(
            std::clamp(1.0 - cmndf[static_cast<std::size_t>(best)], 0.0, 1.0));
    }
    return out;
}

double periodicity_error(const Waveform& ref, const Waveform& gen) {
    if (ref.sample_rate != gen.sample_rate)
        throw validation_error("periodicity_error: sample rates differ");
    const PitchTrack a = pitch_track(ref);
    const PitchTrack b = pitch_track(gen);
    const std::size_t frames = std::min(a.periodicity.size(), b.periodicity.size());

    double acc = 0.0;
    std::size_t voiced = 0;
    for (std::size_t t = 0; t < frames; ++t) {
        if (a.periodicity[t] > 0.5 || b.periodicity[t] > 0.5) {
            const double d = a.periodicity[t] - b.periodicity[t];
            acc += d * d;
            ++voiced;
        }
    }
    return voiced > 0 ? std::sqrt(acc / static_cast<double>(voiced)) : 0.0;
}

namespace {

// Symmetric PSD square root; eigenvalues below -1e-8 (relative to the top
// one) are an error, small negatives clip to zero.
std::vector<double> sqrt_psd(const std::vector<double>& m, int n, const char* what) {
    std::vector<double> vals, vecs;
    eigen_symmetric(m, n, vals, vecs);
    const double scale = std::max(1.0, std::abs(vals.back()));
    for (double v : vals) {
        if (v < -1e-8 * scale)
            throw validation_error(std::string("frechet_distance: ") + what +
                                   " is not PSD beyond tolerance");
    }
    std::vector<double> out(static_cast<std::size_t>(n) * n, 0.0);
    for (int k = 0; k < n; ++k) {
        const double s = std::sqrt(std::max(0.0, vals[static_cast<std::size_t>(k)]));
        if (s == 0.0) continue;
        for (int i = 0; i < n; ++i) {
            const double vik = vecs[static_cast<std::size_t>(i) * n + k] * s;
            for (int j = 0; j < n; ++j)
                out[static_cast<std::size_t>(i) * n + j] +=
                    vik * vecs[static_cast<std::size_t>(j) * n + k];
        }
    }
    return out;
}

} // namespace

double frechet_distance(const EmbeddingStats& a, const EmbeddingStats& b) {
    const int n = static_cast<int>(a.mean.size());
    if (b.mean.size() != a.mean.size())
        throw validation_error("frechet_distance: dimension mismatch");
    if (a.covariance.rows != a.mean.size() || b.covariance.rows != b.mean.size())
        throw validation_error("frechet_distance: covariance shape mismatch");

    double mean_term = 0.0;
    for (int i = 0; i < n; ++i) {
        const double d = a.mean[static_cast<std::size_t>(i)] - b.mean[static_cast<std::size_t>(i)];
        mean_term += d * d;
    }

    double tr_a = 0.0, tr_b = 0.0;
    for (int i = 0; i < n; ++i) {
        tr_a += a.covariance.at(static_cast<std::size_t>(i), static_cast<std::size_t>(i));
        tr_b += b.covariance.at(static_cast<std::size_t>(i), static_cast<std::size_t>(i));
    }

    // Tr((Sa Sb)^{1/2}) computed via the symmetric form
    // (Sa^{1/2} Sb Sa^{1/2})^{1/2}.
    const std::vector<double> ra = sqrt_psd(a.covariance.data, n, "covariance A");
    std::vector<double> inner = mat_mul(mat_mul(ra, b.covariance.data, n), ra, n);
    // Symmetrize against rounding before the second decomposition.
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double v = 0.5 * (inner[static_cast<std::size_t>(i) * n + j] +
                                    inner[static_cast<std::size_t>(j) * n + i]);
            inner[static_cast<std::size_t>(i) * n + j] = v;
            inner[static_cast<std::size_t>(j) * n + i] = v;
        }
    std::vector<double> vals, vecs;
    eigen_symmetric(inner, n, vals, vecs);
    const double scale = std::max(1.0, std::abs(vals.back()));
    double tr_sqrt = 0.0;
    for (double v : vals) {
        if (v < -1e-8 * scale)
            throw validation_error("frechet_distance: product matrix not PSD beyond tolerance");
        tr_sqrt += std::sqrt(std::max(0.0, v));
    }

    return std::max(0.0, mean_term + tr_a + tr_b - 2.0 * tr_sqrt);
}

EmbeddingStats embedding_stats(const MatrixD& embeddings) {
    const std::size_t n = embeddings.rows, d = embeddings.cols;
    if (n < 2) throw validation_error("embedding_stats: need at least 2 rows");

    EmbeddingStats out;
    out.n = n;
    out.mean.assign(d, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j) out.mean[j] += embeddings.at(i, j);
    for (std::size_t j = 0; j < d; ++j) out.mean[j] /= static_cast<double>(n);

    out.covariance = MatrixD(d, d);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t p = 0; p < d; ++p) {
            const double dp = embeddings.at(i, p) - out.mean[p];
            for (std::size_t q = p; q < d; ++q) {
                out.covariance.at(p, q) += dp * (embeddings.at(i, q) - out.mean[q]);
            }
        }
    }
    for (std::size_t p = 0; p < d; ++p)
        for (std::size_t q = p; q < d; ++q) {
            const double v = out.covariance.at(p, q) / static_cast<double>(n - 1);
            out.covariance.at(p, q) = v;
            out.covariance.at(q, p) = v;
        }
    return out;
}

LengthReport length_consistency(long long mel_frames, long long waveform_len, long long hop,
                                int sample_rate) {
    if (mel_frames <= 0 || waveform_len <= 0 || hop <= 0)
        throw validation_error("length_consistency: inputs must be positive");
    LengthReport r;
    r.mel_frames = mel_frames;
    r.hop = hop;
    r.waveform_len = waveform_len;
    r.expected_len = mel_frames * hop;
    r.diff = waveform_len - r.expected_len;
    r.diff_seconds = sample_rate > 0 ? static_cast<double>(r.diff) / sample_rate : 0.0;
    r.pass = std::llabs(r.diff) <= hop;
    return r;
}

MetricReport compute_metric_report(
    const Waveform& ref, const Waveform& gen, const VocoderConfig& cfg,
    const std::optional<std::pair<EmbeddingStats, EmbeddingStats>>& embeddings) {
    if (ref.sample_rate != gen.sample_rate)
        throw validation_error("metrics: sample rates differ");
    const std::size_t n = std::min(ref.samples.size(), gen.samples.size());
    if (n == 0) throw validation_error("metrics: empty audio");
    Waveform r{std::vector<double>(ref.samples.begin(), ref.samples.begin() + static_cast<long long>(n)),
               ref.sample_rate};
    Waveform g{std::vector<double>(gen.samples.begin(), gen.samples.begin() + static_cast<long long>(n)),
               gen.sample_rate};

    MetricReport rep;
    rep.mcd = mcd(r, g, cfg);
    rep.m_stft = m_stft_loss(r, g, cfg.resolutions);
    const MelSpectrogram mr = mel_spectrogram(r, cfg);
    const MelSpectrogram mg = mel_spectrogram(g, cfg);
    rep.ssim = ssim_mel(mr, mg);
    rep.pcc = pcc_mel(mr, mg);
    rep.periodicity = periodicity_error(r, g);
    if (embeddings) rep.fad = frechet_distance(embeddings->first, embeddings->second);

    rep.provenance = "config:" + (cfg.source_hash.empty() ? std::string("unhashed") : cfg.source_hash) +
                     ";mel:hann-center-reflect,ln-clamp1e-5,htk-unnormalized" +
                     ";mcd:dct2-ortho-c1-13,dtw-exact" +
                     ";ssim:11x11-gauss1.5-jointminmax" +
                     ";periodicity:yin-10ms-50-1100hz" +
                     ";envelope:butterworth-order" + std::to_string(kEnvelopeFilterOrder);
    return rep;
}

} // namespace voctk
