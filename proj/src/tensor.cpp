#include "voctk/tensor.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

namespace voctk {

using nlohmann::json;

const NamedTensor& WeightBundle::get(const std::string& name) const {
    auto it = tensors.find(name);
    if (it == tensors.end()) throw validation_error("weight bundle: missing tensor \"" + name + "\"");
    return it->second;
}

void WeightBundle::add(NamedTensor t) {
    if (tensors.count(t.name))
        throw validation_error("weight bundle: duplicate tensor \"" + t.name + "\"");
    if (t.numel() != static_cast<long long>(t.data.size()))
        throw validation_error("weight bundle: shape/data mismatch for \"" + t.name + "\"");
    tensors.emplace(t.name, std::move(t));
}

void save_bundle(const WeightBundle& bundle, const std::string& base_path) {
    json manifest;
    manifest["format"] = "voctk-weights-v1";
    manifest["created_by"] = bundle.created_by.empty() ? kVersion : bundle.created_by;
    manifest["config_hash"] = bundle.config_hash;

    std::ofstream bin(base_path + ".bin", std::ios::binary);
    if (!bin) throw io_error("cannot open for writing: " + base_path + ".bin");

    json entries = json::array();
    std::uint64_t offset = 0;
    for (const auto& [name, t] : bundle.tensors) {
        const std::uint64_t nbytes = static_cast<std::uint64_t>(t.data.size()) * sizeof(float);
        entries.push_back({{"name", name}, {"shape", t.shape}, {"dtype", "f32"},
                           {"offset", offset}, {"nbytes", nbytes}});
        bin.write(reinterpret_cast<const char*>(t.data.data()), static_cast<std::streamsize>(nbytes));
        offset += nbytes;
    }
    manifest["tensors"] = entries;
    if (!bin) throw io_error("write failed: " + base_path + ".bin");

    std::ofstream mf(base_path + ".manifest.json");
    if (!mf) throw io_error("cannot open for writing: " + base_path + ".manifest.json");
    mf << manifest.dump(2) << "\n";
    if (!mf) throw io_error("write failed: " + base_path + ".manifest.json");
}

WeightBundle load_bundle(const std::string& path) {
    const std::string suffix = ".manifest.json";
    std::string base = path;
    if (base.size() > suffix.size() && base.substr(base.size() - suffix.size()) == suffix)
        base = base.substr(0, base.size() - suffix.size());

    std::ifstream mf(base + suffix);
    if (!mf) throw io_error("cannot open bundle manifest: " + base + suffix);
    json manifest;
    try {
        mf >> manifest;
    } catch (const json::exception& e) {
        throw validation_error("bundle manifest " + base + suffix + ": " + e.what());
    }

    std::ifstream bin(base + ".bin", std::ios::binary);
    if (!bin) throw io_error("cannot open bundle blob: " + base + ".bin");

    WeightBundle bundle;
    try {
        bundle.config_hash = manifest.value("config_hash", "");
        bundle.created_by = manifest.value("created_by", "");
        for (const auto& e : manifest.at("tensors")) {
            NamedTensor t;
            t.name = e.at("name").get<std::string>();
            t.shape = e.at("shape").get<std::vector<long long>>();
            if (e.at("dtype").get<std::string>() != "f32")
                throw validation_error("bundle: unsupported dtype for \"" + t.name + "\"");
            const auto offset = e.at("offset").get<std::uint64_t>();
            const auto nbytes = e.at("nbytes").get<std::uint64_t>();
            if (nbytes != static_cast<std::uint64_t>(t.numel()) * sizeof(float))
                throw validation_error("bundle: nbytes/shape mismatch for \"" + t.name + "\"");
            t.data.resize(nbytes / sizeof(float));
            bin.seekg(static_cast<std::streamoff>(offset));
            bin.read(reinterpret_cast<char*>(t.data.data()), static_cast<std::streamsize>(nbytes));
            if (static_cast<std::uint64_t>(bin.gcount()) != nbytes)
                throw io_error("bundle blob truncated at tensor \"" + t.name + "\"");
            bundle.add(std::move(t));
        }
    } catch (const json::exception& e) {
        throw validation_error("bundle manifest " + base + suffix + ": " + e.what());
    }
    return bundle;
}

double NormalSampler::next(double stddev) {
    if (have_spare_) {
        have_spare_ = false;
        return spare_ * stddev;
    }
    // 53-bit uniforms; u1 is kept away from zero for the log.
    const double u1 =
        (static_cast<double>(engine_() >> 11) + 1.0) * (1.0 / 9007199254740993.0);
    const double u2 = static_cast<double>(engine_() >> 11) * (1.0 / 9007199254740992.0);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta) * stddev;
}

} // namespace voctk
