#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "texseg/scalar_map.hpp"

namespace texseg {

/// Malformed FMAP payload (bad magic, version, or byte length).
class FmapError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::uint8_t kFmapVersion = 1;

/// Lossless float-map container: magic "FMAP", a version byte, 32-bit
/// little-endian width and height, then width x height IEEE-754 doubles,
/// little-endian, row-major. Total size is exactly 13 + 8wh bytes.
std::vector<std::uint8_t> encode_fmap(const ScalarMap& map);

ScalarMap decode_fmap(std::span<const std::uint8_t> bytes);

ScalarMap read_fmap_file(const std::string& path);
void write_fmap_file(const ScalarMap& map, const std::string& path);

} // namespace texseg
