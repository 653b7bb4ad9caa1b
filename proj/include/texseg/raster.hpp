#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace texseg {

/// Parse or validation failure in the PGM codec. The message names the
/// byte offset where decoding stopped.
class PgmError : public std::runtime_error {
public:
    PgmError(const std::string& what, std::size_t byte_offset);
    std::size_t byte_offset() const { return offset_; }

private:
    std::size_t offset_;
};

/// 8-bit grayscale raster, row-major, origin at the top-left corner.
/// Immutable after construction; (x, y) is (column, row).
class GrayImage {
public:
    GrayImage(int width, int height, std::vector<std::uint8_t> pixels);
    GrayImage(int width, int height, std::uint8_t fill);

    int width() const { return width_; }
    int height() const { return height_; }
    const std::vector<std::uint8_t>& pixels() const { return pixels_; }

    std::uint8_t at(int x, int y) const {
        return pixels_[static_cast<std::size_t>(y) * width_ + x];
    }
    void set(int x, int y, std::uint8_t v) {
        pixels_[static_cast<std::size_t>(y) * width_ + x] = v;
    }

    bool operator==(const GrayImage&) const = default;

private:
    int width_;
    int height_;
    std::vector<std::uint8_t> pixels_;
};

/// Centered square neighborhood. Side must be odd so a center pixel
/// exists; out-of-image neighbors are always resolved by clamping
/// coordinates to the nearest edge pixel.
struct WindowSpec {
    explicit WindowSpec(int side_);
    int side;
};

/// Decodes a PGM file, magic "P2" (ASCII) or "P5" (binary), maxval <= 255.
/// '#' comment lines are accepted after the magic. Both encodings of the
/// same data decode identically.
GrayImage load_pgm(std::span<const std::uint8_t> bytes);

/// Encodes as PGM with maxval 255. ASCII output puts one image row per
/// line; binary output has exactly one whitespace byte after the maxval.
std::vector<std::uint8_t> save_pgm(const GrayImage& image, bool ascii);

GrayImage load_pgm_file(const std::string& path);
void save_pgm_file(const GrayImage& image, const std::string& path, bool ascii = false);

/// Maps gray values onto [0, levels-1] via floor(v * levels / 256).
/// levels must lie in [2, 256]; levels == 256 is the identity.
GrayImage quantize(const GrayImage& image, int levels);

/// Pixel at (cx+dx, cy+dy) with both coordinates clamped to the image.
/// The center itself must be inside the image.
std::uint8_t window_pixel(const GrayImage& image, int cx, int cy, int dx, int dy);

/// Copies the side x side window centered at (cx, cy), replicating edge
/// pixels where the window leaves the image.
GrayImage extract_window(const GrayImage& image, int cx, int cy, int side);

} // namespace texseg
