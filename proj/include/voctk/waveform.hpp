#pragma once

#include <vector>

#include "voctk/common.hpp"

namespace voctk {

// Mono audio. Samples are dimensionless amplitudes, nominally in [-1, 1].
struct Waveform {
    std::vector<double> samples;
    int sample_rate = 0;

    std::size_t size() const { return samples.size(); }
    double duration_seconds() const {
        return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
    }
};

// Throws validation_error on NaN/Inf samples or nonpositive sample rate.
void validate(const Waveform& w);

// Scales so the peak absolute amplitude is exactly 0.95. All-zero input is
// returned unchanged, as is input already peaking at 0.95 (this makes the
// operation exactly idempotent).
Waveform normalize_peak(const Waveform& w);

} // namespace voctk
