#pragma once

#include <array>
#include <string>
#include <vector>

#include "voctk/common.hpp"

namespace voctk {

enum class Activation { snake, snakebeta, leaky_relu };

Activation activation_from_string(const std::string& s);
std::string to_string(Activation a);

// [n_fft, hop_length, win_length]
using Resolution = std::array<int, 3>;

struct VocoderConfig {
    int num_mels = 80;
    int n_fft = 1024;
    int win_size = 1024;
    int hop_size = 256;
    int sampling_rate = 24000;
    double fmin = 0.0;
    double fmax = 12000.0;
    int segment_size = 8192;
    std::vector<int> upsample_rates;
    std::vector<int> upsample_kernel_sizes;
    int upsample_initial_channel = 512;
    std::vector<int> resblock_kernel_sizes;
    std::vector<std::vector<int>> resblock_dilation_sizes;
    std::vector<Resolution> resolutions;
    std::vector<int> mpd_reshapes;
    Activation activation = Activation::snakebeta;
    bool snake_logscale = true;
    bool use_spectral_norm = false;
    double discriminator_channel_mult = 1.0;

    // FNV-1a of the source file bytes; empty when built programmatically.
    std::string source_hash;

    int total_upsample() const;
};

// Throws validation_error when any invariant fails, e.g. when
// product(upsample_rates) != hop_size.
void validate(const VocoderConfig& cfg);

// Parses a JSON config. Unknown keys are ignored with a warning on stderr;
// missing required keys and invariant violations are errors.
VocoderConfig parse_config(const std::string& json_text, const std::string& origin = "<string>");
VocoderConfig load_config(const std::string& path);

} // namespace voctk
