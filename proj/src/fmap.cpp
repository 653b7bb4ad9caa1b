#include "texseg/fmap.hpp"

#include <bit>
#include <cmath>
#include <fstream>

namespace texseg {

namespace {

constexpr std::size_t kHeaderBytes = 13;

void put_u32_le(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 24));
}

std::uint32_t get_u32_le(const std::uint8_t* p) {
    return std::uint32_t(p[0]) | std::uint32_t(p[1]) << 8 | std::uint32_t(p[2]) << 16 |
           std::uint32_t(p[3]) << 24;
}

} // namespace

std::vector<std::uint8_t> encode_fmap(const ScalarMap& map) {
    std::vector<std::uint8_t> out;
    out.reserve(kHeaderBytes + 8 * map.values().size());
    for (const char c : {'F', 'M', 'A', 'P'}) out.push_back(static_cast<std::uint8_t>(c));
    out.push_back(kFmapVersion);
    put_u32_le(out, static_cast<std::uint32_t>(map.width()));
    put_u32_le(out, static_cast<std::uint32_t>(map.height()));
    for (const double v : map.values()) {
        const auto bits = std::bit_cast<std::uint64_t>(v);
        for (int shift = 0; shift < 64; shift += 8)
            out.push_back(static_cast<std::uint8_t>(bits >> shift));
    }
    return out;
}

ScalarMap decode_fmap(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < kHeaderBytes)
        throw FmapError("fmap: header truncated: got " + std::to_string(bytes.size()) +
                        " bytes, need at least " + std::to_string(kHeaderBytes));
    if (!(bytes[0] == 'F' && bytes[1] == 'M' && bytes[2] == 'A' && bytes[3] == 'P'))
        throw FmapError("fmap: bad magic, expected \"FMAP\"");
    if (bytes[4] != kFmapVersion)
        throw FmapError("fmap: unsupported version " + std::to_string(int(bytes[4])) +
                        ", expected " + std::to_string(int(kFmapVersion)));

    const std::uint32_t width = get_u32_le(bytes.data() + 5);
    const std::uint32_t height = get_u32_le(bytes.data() + 9);
    if (width == 0 || height == 0)
        throw FmapError("fmap: zero dimension");

    const std::uint64_t expected = kHeaderBytes + 8ull * width * height;
    if (bytes.size() != expected)
        throw FmapError("fmap: payload length mismatch: expected " + std::to_string(expected) +
                        " bytes for " + std::to_string(width) + "x" + std::to_string(height) +
                        ", got " + std::to_string(bytes.size()));

    std::vector<double> values;
    values.reserve(std::size_t(width) * height);
    const std::uint8_t* p = bytes.data() + kHeaderBytes;
    for (std::uint64_t i = 0; i < std::uint64_t(width) * height; ++i, p += 8) {
        std::uint64_t bits = 0;
        for (int b = 0; b < 8; ++b) bits |= std::uint64_t(p[b]) << (8 * b);
        const double v = std::bit_cast<double>(bits);
        if (!std::isfinite(v))
            throw FmapError("fmap: non-finite value at index " + std::to_string(i));
        values.push_back(v);
    }
    return ScalarMap(static_cast<int>(width), static_cast<int>(height), std::move(values));
}

ScalarMap read_fmap_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return decode_fmap(bytes);
}

void write_fmap_file(const ScalarMap& map, const std::string& path) {
    const auto bytes = encode_fmap(map);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace texseg
