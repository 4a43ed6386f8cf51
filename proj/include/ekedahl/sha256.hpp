// Minimal SHA-256 (FIPS 180-4), enough for content fingerprints and cache keys.
#pragma once

#include <cstdint>
#include <string>

namespace ekedahl {

std::string sha256_hex(const void* data, size_t len);
inline std::string sha256_hex(const std::string& s) { return sha256_hex(s.data(), s.size()); }

}  // namespace ekedahl
