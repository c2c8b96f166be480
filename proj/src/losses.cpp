#include "voctk/losses.hpp"

#include <cmath>

#include "voctk/spectral.hpp"

namespace voctk {

namespace {

double mean_sq_dev(const std::vector<float>& scores, double target) {
    double acc = 0.0;
    for (float s : scores) {
        const double d = static_cast<double>(s) - target;
        acc += d * d;
    }
    return acc / static_cast<double>(scores.size());
}

} // namespace

double adv_loss_d(const std::vector<float>& scores_real, const std::vector<float>& scores_gen) {
    if (scores_real.empty() || scores_gen.empty())
        throw validation_error("adv_loss_d: empty score map");
    return mean_sq_dev(scores_real, 1.0) + mean_sq_dev(scores_gen, 0.0);
}

double adv_loss_g(const std::vector<float>& scores_gen) {
    if (scores_gen.empty()) throw validation_error("adv_loss_g: empty score map");
    return mean_sq_dev(scores_gen, 1.0);
}

double mel_loss(const Waveform& real, const Waveform& gen, const VocoderConfig& cfg) {
    if (real.samples.size() != gen.samples.size())
        throw validation_error("mel_loss: waveform lengths differ");
    if (real.sample_rate != gen.sample_rate)
        throw validation_error("mel_loss: sample rates differ");
    const MelSpectrogram a = mel_spectrogram(real, cfg);
    const MelSpectrogram b = mel_spectrogram(gen, cfg);
    double acc = 0.0;
    for (std::size_t i = 0; i < a.values.data.size(); ++i)
        acc += std::abs(a.values.data[i] - b.values.data[i]);
    return acc / static_cast<double>(a.values.data.size());
}

double feature_matching_loss(const std::vector<FeatureMap>& real_feats,
                             const std::vector<FeatureMap>& gen_feats) {
    if (real_feats.size() != gen_feats.size())
        throw validation_error("feature_matching_loss: layer counts differ");
    double total = 0.0;
    for (std::size_t l = 0; l < real_feats.size(); ++l) {
        const auto& a = real_feats[l].data;
        const auto& b = gen_feats[l].data;
        if (a.size() != b.size() || real_feats[l].shape != gen_feats[l].shape)
            throw validation_error("feature_matching_loss: layer " + std::to_string(l) +
                                   " shape mismatch");
        double acc = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
            acc += std::abs(static_cast<double>(a[i]) - static_cast<double>(b[i]));
        total += acc / static_cast<double>(a.size());
    }
    return total;
}

LossBreakdown total_losses(const std::vector<DiscriminatorOutput>& outputs_real,
                           const std::vector<DiscriminatorOutput>& outputs_gen,
                           const Waveform& real, const Waveform& gen, const LossWeights& weights,
                           const VocoderConfig& cfg) {
    if (outputs_real.size() != outputs_gen.size())
        throw validation_error("total_losses: ensemble sizes differ");
    if (weights.lambda_fm < 0.0 || weights.lambda_mel < 0.0)
        throw validation_error("total_losses: loss weights must be nonnegative");

    LossBreakdown out;
    for (std::size_t e = 0; e < outputs_real.size(); ++e) {
        const auto& r = outputs_real[e];
        const auto& g = outputs_gen[e];
        if (r.scores.size() != g.scores.size())
            throw validation_error("total_losses: sub-discriminator counts differ");
        for (std::size_t k = 0; k < r.scores.size(); ++k) {
            out.adv_d_per_k.push_back(adv_loss_d(r.scores[k], g.scores[k]));
            out.adv_g_per_k.push_back(adv_loss_g(g.scores[k]));
            out.fm_per_k.push_back(feature_matching_loss(r.features[k], g.features[k]));
        }
    }
    out.mel = mel_loss(real, gen, cfg);

    for (std::size_t k = 0; k < out.adv_g_per_k.size(); ++k) {
        out.total_g += out.adv_g_per_k[k] + weights.lambda_fm * out.fm_per_k[k];
        out.total_d += out.adv_d_per_k[k];
    }
    out.total_g += weights.lambda_mel * out.mel;
    return out;
}

} // namespace voctk
