#include "voctk/wav_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iostream>
#include <vector>

namespace voctk {

void validate(const Waveform& w) {
    if (w.sample_rate <= 0) throw validation_error("waveform sample_rate must be positive");
    for (double s : w.samples) {
        if (!std::isfinite(s)) throw validation_error("waveform contains non-finite samples");
    }
}

Waveform normalize_peak(const Waveform& w) {
    if (w.samples.empty()) throw validation_error("normalize_peak: empty waveform");
    double peak = 0.0;
    for (double s : w.samples) peak = std::max(peak, std::abs(s));
    if (peak == 0.0 || peak == 0.95) return w;
    Waveform out = w;
    for (double& s : out.samples) s = (s / peak) * 0.95;
    return out;
}

namespace {

constexpr double kMaxWavValue = 32768.0;

struct Reader {
    const std::string& path;
    std::ifstream in;

    explicit Reader(const std::string& p) : path(p), in(p, std::ios::binary) {
        if (!in) throw io_error("cannot open WAV file: " + path);
    }

    void bytes(void* dst, std::size_t n) {
        in.read(static_cast<char*>(dst), static_cast<std::streamsize>(n));
        if (static_cast<std::size_t>(in.gcount()) != n)
            throw io_error("truncated WAV file: " + path);
    }
    std::uint32_t u32() {
        unsigned char b[4];
        bytes(b, 4);
        return b[0] | (b[1] << 8) | (b[2] << 16) | (std::uint32_t(b[3]) << 24);
    }
    std::uint16_t u16() {
        unsigned char b[2];
        bytes(b, 2);
        return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
    }
    void skip(std::uint32_t n) { in.seekg(n, std::ios::cur); }
};

void put_u32(std::ofstream& out, std::uint32_t v) {
    char b[4] = {char(v & 0xff), char((v >> 8) & 0xff), char((v >> 16) & 0xff), char((v >> 24) & 0xff)};
    out.write(b, 4);
}
void put_u16(std::ofstream& out, std::uint16_t v) {
    char b[2] = {char(v & 0xff), char((v >> 8) & 0xff)};
    out.write(b, 2);
}

} // namespace

Waveform read_wav(const std::string& path) {
    Reader r(path);

    char tag[4];
    r.bytes(tag, 4);
    if (std::memcmp(tag, "RIFF", 4) != 0) throw validation_error("not a RIFF file: " + path);
    r.u32(); // riff size
    r.bytes(tag, 4);
    if (std::memcmp(tag, "WAVE", 4) != 0) throw validation_error("not a WAVE file: " + path);

    std::uint16_t format = 0, channels = 0, bits = 0;
    std::uint32_t sample_rate = 0;
    bool have_fmt = false;

    while (true) {
        if (!r.in.read(tag, 4)) throw validation_error("WAV file has no data chunk: " + path);
        std::uint32_t chunk_size = r.u32();
        if (std::memcmp(tag, "fmt ", 4) == 0) {
            if (chunk_size < 16) throw validation_error("malformed fmt chunk: " + path);
            format = r.u16();
            channels = r.u16();
            sample_rate = r.u32();
            r.u32(); // byte rate
            r.u16(); // block align
            bits = r.u16();
            if (chunk_size > 16) r.skip(chunk_size - 16);
            have_fmt = true;
        } else if (std::memcmp(tag, "data", 4) == 0) {
            if (!have_fmt) throw validation_error("data chunk precedes fmt chunk: " + path);
            if (channels != 1)
                throw validation_error("multichannel WAV not supported (" + std::to_string(channels) +
                                       " channels): " + path);
            Waveform w;
            w.sample_rate = static_cast<int>(sample_rate);
            if (format == 1 && bits == 16) {
                std::size_t n = chunk_size / 2;
                std::vector<unsigned char> raw(chunk_size);
                r.bytes(raw.data(), chunk_size);
                w.samples.resize(n);
                for (std::size_t i = 0; i < n; ++i) {
                    std::int16_t v = static_cast<std::int16_t>(raw[2 * i] | (raw[2 * i + 1] << 8));
                    w.samples[i] = v / kMaxWavValue;
                }
            } else if (format == 3 && bits == 32) {
                std::size_t n = chunk_size / 4;
                std::vector<unsigned char> raw(chunk_size);
                r.bytes(raw.data(), chunk_size);
                w.samples.resize(n);
                for (std::size_t i = 0; i < n; ++i) {
                    std::uint32_t u = raw[4 * i] | (raw[4 * i + 1] << 8) | (raw[4 * i + 2] << 16) |
                                      (std::uint32_t(raw[4 * i + 3]) << 24);
                    float f;
                    std::memcpy(&f, &u, 4);
                    w.samples[i] = f;
                }
            } else {
                throw validation_error("unsupported WAV encoding (format " + std::to_string(format) +
                                       ", " + std::to_string(bits) + " bits): " + path);
            }
            validate(w);
            return w;
        } else {
            r.skip(chunk_size + (chunk_size & 1));
        }
    }
}

void write_wav(const Waveform& w, const std::string& path, WavEncoding encoding) {
    validate(w);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open for writing: " + path);

    const std::uint32_t n = static_cast<std::uint32_t>(w.samples.size());
    const bool pcm = (encoding == WavEncoding::pcm16);
    const std::uint16_t bytes_per_sample = pcm ? 2 : 4;
    const std::uint32_t data_size = n * bytes_per_sample;

    out.write("RIFF", 4);
    put_u32(out, 36 + data_size);
    out.write("WAVE", 4);
    out.write("fmt ", 4);
    put_u32(out, 16);
    put_u16(out, pcm ? 1 : 3);
    put_u16(out, 1);
    put_u32(out, static_cast<std::uint32_t>(w.sample_rate));
    put_u32(out, static_cast<std::uint32_t>(w.sample_rate) * bytes_per_sample);
    put_u16(out, bytes_per_sample);
    put_u16(out, pcm ? 16 : 32);
    out.write("data", 4);
    put_u32(out, data_size);

    if (pcm) {
        bool clipped = false;
        for (double s : w.samples) {
            double scaled = std::round(s * kMaxWavValue);
            if (scaled > 32767.0 || scaled < -32768.0) clipped = true;
            std::int16_t v = static_cast<std::int16_t>(std::clamp(scaled, -32768.0, 32767.0));
            put_u16(out, static_cast<std::uint16_t>(v));
        }
        if (clipped)
            std::cerr << "warning: samples outside [-1, 1] clipped while writing " << path << "\n";
    } else {
        for (double s : w.samples) {
            float f = static_cast<float>(s);
            std::uint32_t u;
            std::memcpy(&u, &f, 4);
            put_u32(out, u);
        }
    }
    if (!out) throw io_error("write failed: " + path);
}

} // namespace voctk
