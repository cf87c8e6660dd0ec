#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace wordclust {

/// FNV-1a 64-bit; used for run-report content fingerprints (not cryptographic).
inline std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t hash_file(const std::filesystem::path& path);

std::string hex64(std::uint64_t value);

} // namespace wordclust
