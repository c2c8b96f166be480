#pragma once

#include <string>

#include "voctk/waveform.hpp"

namespace voctk {

enum class WavEncoding {
    pcm16,   // 16-bit signed PCM; decode divides by 32768.0
    float32, // IEEE float, lossless round trip
};

// Reads a mono RIFF WAV file (PCM16 or IEEE float32). Unsupported encodings,
// multichannel files and truncated files are each reported distinctly.
Waveform read_wav(const std::string& path);

// Writes `w` to `path`. PCM16 samples are round(x * 32768) clamped to int16
// range; out-of-range inputs are clipped (a warning goes to stderr).
void write_wav(const Waveform& w, const std::string& path, WavEncoding encoding);

} // namespace voctk
