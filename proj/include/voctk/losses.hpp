#pragma once

#include <vector>

#include "voctk/config.hpp"
#include "voctk/netgraph.hpp"
#include "voctk/waveform.hpp"

namespace voctk {

struct LossWeights {
    double lambda_fm = 2.0;
    double lambda_mel = 45.0;
};

struct LossBreakdown {
    std::vector<double> adv_d_per_k;
    std::vector<double> adv_g_per_k;
    std::vector<double> fm_per_k;
    double mel = 0.0;
    double total_g = 0.0; // sum_k (adv_g + lambda_fm * fm) + lambda_mel * mel
    double total_d = 0.0; // sum_k adv_d
};

// mean((D(x) - 1)^2) + mean(D(G(s))^2)
double adv_loss_d(const std::vector<float>& scores_real, const std::vector<float>& scores_gen);

// mean((D(G(s)) - 1)^2)
double adv_loss_g(const std::vector<float>& scores_gen);

// Mean absolute difference of the two mel matrices.
double mel_loss(const Waveform& real, const Waveform& gen, const VocoderConfig& cfg);

// Per-layer mean absolute difference, summed over layers.
double feature_matching_loss(const std::vector<FeatureMap>& real_feats,
                             const std::vector<FeatureMap>& gen_feats);

// Ensemble totals over K sub-discriminators (flat across a combination).
LossBreakdown total_losses(const std::vector<DiscriminatorOutput>& outputs_real,
                           const std::vector<DiscriminatorOutput>& outputs_gen,
                           const Waveform& real, const Waveform& gen, const LossWeights& weights,
                           const VocoderConfig& cfg);

} // namespace voctk
