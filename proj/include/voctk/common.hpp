#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace voctk {

inline constexpr const char* kVersion = "0.1.0";

// Bad input: malformed files, invalid flags, violated config invariants.
// The CLI maps this to exit code 1.
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Failures while doing otherwise-valid work (I/O, numerics). Exit code 2.
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

// FNV-1a, used to fingerprint config files in JSON outputs.
inline std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t v);

} // namespace voctk
