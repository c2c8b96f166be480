#include "voctk/config.hpp"

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace voctk {

using nlohmann::json;

Activation activation_from_string(const std::string& s) {
    if (s == "snake") return Activation::snake;
    if (s == "snakebeta") return Activation::snakebeta;
    if (s == "leaky_relu") return Activation::leaky_relu;
    throw validation_error("unknown activation: " + s);
}

std::string to_string(Activation a) {
    switch (a) {
        case Activation::snake: return "snake";
        case Activation::snakebeta: return "snakebeta";
        case Activation::leaky_relu: return "leaky_relu";
    }
    return "?";
}

int VocoderConfig::total_upsample() const {
    int p = 1;
    for (int r : upsample_rates) p *= r;
    return p;
}

void validate(const VocoderConfig& cfg) {
    auto fail = [](const std::string& msg) { throw validation_error("config: " + msg); };
    if (cfg.num_mels <= 0) fail("num_mels must be positive");
    if (cfg.n_fft <= 0 || cfg.win_size <= 0 || cfg.hop_size <= 0) fail("FFT sizes must be positive");
    if (cfg.win_size > cfg.n_fft) fail("win_size must be <= n_fft");
    if (cfg.hop_size > cfg.win_size) fail("hop_size must be <= win_size");
    if (cfg.sampling_rate <= 0) fail("sampling_rate must be positive");
    if (!(cfg.fmin < cfg.fmax)) fail("fmin must be < fmax");
    if (cfg.fmax > cfg.sampling_rate / 2.0) fail("fmax must be <= sampling_rate / 2");
    if (cfg.upsample_rates.empty()) fail("upsample_rates must be nonempty");
    if (cfg.upsample_rates.size() != cfg.upsample_kernel_sizes.size())
        fail("upsample_rates and upsample_kernel_sizes must have equal length");
    if (cfg.resblock_kernel_sizes.size() != cfg.resblock_dilation_sizes.size())
        fail("resblock_kernel_sizes and resblock_dilation_sizes must have equal length");
    if (cfg.total_upsample() != cfg.hop_size) {
        std::ostringstream os;
        os << "product(upsample_rates) = " << cfg.total_upsample()
           << " must equal hop_size = " << cfg.hop_size;
        fail(os.str());
    }
    for (int r : cfg.upsample_rates)
        if (r <= 0) fail("upsample_rates entries must be positive");
    for (int k : cfg.upsample_kernel_sizes)
        if (k <= 0) fail("upsample_kernel_sizes entries must be positive");
    for (const auto& res : cfg.resolutions) {
        if (res[0] <= 0 || res[1] <= 0 || res[2] <= 0) fail("resolution entries must be positive");
        if (res[2] > res[0]) fail("resolution win_length must be <= n_fft");
    }
    for (int p : cfg.mpd_reshapes)
        if (p <= 0) fail("mpd_reshapes entries must be positive");
    if (cfg.discriminator_channel_mult <= 0) fail("discriminator_channel_mult must be positive");
    if (cfg.upsample_initial_channel <= 0) fail("upsample_initial_channel must be positive");
}

VocoderConfig parse_config(const std::string& json_text, const std::string& origin) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw validation_error("config " + origin + ": invalid JSON: " + e.what());
    }
    if (!j.is_object()) throw validation_error("config " + origin + ": top level must be an object");

    static const std::set<std::string> known = {
        "num_mels", "n_fft", "win_size", "hop_size", "sampling_rate", "fmin", "fmax",
        "segment_size", "upsample_rates", "upsample_kernel_sizes", "upsample_initial_channel",
        "resblock_kernel_sizes", "resblock_dilation_sizes", "resolutions", "mpd_reshapes",
        "activation", "snake_logscale", "use_spectral_norm", "discriminator_channel_mult"};

    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!known.count(it.key()))
            std::cerr << "warning: config " << origin << ": ignoring unknown key \"" << it.key()
                      << "\"\n";
    }

    VocoderConfig cfg;
    auto require = [&](const char* key) -> const json& {
        if (!j.contains(key))
            throw validation_error("config " + origin + ": missing required key \"" + key + "\"");
        return j.at(key);
    };
    try {
        cfg.num_mels = require("num_mels").get<int>();
        cfg.n_fft = require("n_fft").get<int>();
        cfg.win_size = require("win_size").get<int>();
        cfg.hop_size = require("hop_size").get<int>();
        cfg.sampling_rate = require("sampling_rate").get<int>();
        cfg.fmin = require("fmin").get<double>();
        cfg.fmax = require("fmax").get<double>();
        cfg.segment_size = require("segment_size").get<int>();
        cfg.upsample_rates = require("upsample_rates").get<std::vector<int>>();
        cfg.upsample_kernel_sizes = require("upsample_kernel_sizes").get<std::vector<int>>();
        cfg.upsample_initial_channel = require("upsample_initial_channel").get<int>();
        cfg.resblock_kernel_sizes = require("resblock_kernel_sizes").get<std::vector<int>>();
        cfg.resblock_dilation_sizes =
            require("resblock_dilation_sizes").get<std::vector<std::vector<int>>>();
        cfg.resolutions = require("resolutions").get<std::vector<Resolution>>();
        cfg.mpd_reshapes = require("mpd_reshapes").get<std::vector<int>>();
        cfg.activation = activation_from_string(require("activation").get<std::string>());
        cfg.snake_logscale = require("snake_logscale").get<bool>();
        cfg.use_spectral_norm = require("use_spectral_norm").get<bool>();
        cfg.discriminator_channel_mult = require("discriminator_channel_mult").get<double>();
    } catch (const json::exception& e) {
        throw validation_error("config " + origin + ": " + e.what());
    }
    cfg.source_hash = hex64(fnv1a64(json_text));
    validate(cfg);
    return cfg;
}

VocoderConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open config: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path);
}

std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[static_cast<std::size_t>(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return s;
}

} // namespace voctk
