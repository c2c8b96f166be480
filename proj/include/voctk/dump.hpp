#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace voctk {

// Container for matrix/sequence artifacts: one compact JSON header line
// ("kind", "rows", "cols", "dtype":"f32" plus kind-specific extras) followed
// by rows*cols little-endian float32 values, row-major.
struct Dump {
    std::string kind;
    std::size_t rows = 0, cols = 0;
    std::map<std::string, double> extra; // numeric side-channel fields
    std::vector<float> data;
};

void write_dump(const Dump& d, const std::string& path);
Dump read_dump(const std::string& path);

} // namespace voctk
