#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "voctk/common.hpp"

namespace voctk {

struct NamedTensor {
    std::string name;
    std::vector<long long> shape;
    std::vector<float> data; // row-major

    long long numel() const {
        long long n = 1;
        for (long long d : shape) n *= d;
        return n;
    }
};

// Name -> tensor store; the on-disk format is a JSON manifest (names, shapes,
// dtype, byte offsets) next to a single little-endian float32 blob:
// <base>.manifest.json + <base>.bin.
struct WeightBundle {
    std::map<std::string, NamedTensor> tensors;
    std::string config_hash; // manifest meta
    std::string created_by;  // toolkit version that produced the bundle

    const NamedTensor& get(const std::string& name) const;
    bool has(const std::string& name) const { return tensors.count(name) != 0; }
    void add(NamedTensor t);
};

void save_bundle(const WeightBundle& bundle, const std::string& base_path);

// Accepts either the base path or the .manifest.json path.
WeightBundle load_bundle(const std::string& path);

// Deterministic Gaussian stream (Box-Muller over mt19937_64); the standard
// library's normal_distribution is implementation-defined, this is not.
class NormalSampler {
public:
    explicit NormalSampler(std::uint64_t seed) : engine_(seed) {}
    double next(double stddev);

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace voctk
