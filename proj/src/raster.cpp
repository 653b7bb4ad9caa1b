#include "texseg/raster.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <limits>

namespace texseg {

namespace {

std::string with_offset(const std::string& what, std::size_t offset) {
    return what + " (byte " + std::to_string(offset) + ")";
}

// Incremental scanner over the ASCII portions of a PGM stream.
struct Cursor {
    std::span<const std::uint8_t> bytes;
    std::size_t pos = 0;

    bool eof() const { return pos >= bytes.size(); }
    std::uint8_t peek() const { return bytes[pos]; }

    void skip_space_and_comments() {
        while (!eof()) {
            if (std::isspace(peek())) {
                ++pos;
            } else if (peek() == '#') {
                while (!eof() && peek() != '\n') ++pos;
            } else {
                break;
            }
        }
    }

    long read_number(const char* what) {
        skip_space_and_comments();
        const std::size_t start = pos;
        long value = 0;
        bool any = false;
        while (!eof() && std::isdigit(peek())) {
            value = value * 10 + (peek() - '0');
            if (value > std::numeric_limits<int>::max())
                throw PgmError(std::string(what) + " out of range", start);
            ++pos;
            any = true;
        }
        if (!any)
            throw PgmError(std::string("expected ") + what, eof() ? bytes.size() : pos);
        return value;
    }
};

} // namespace

PgmError::PgmError(const std::string& what, std::size_t byte_offset)
    : std::runtime_error(with_offset(what, byte_offset)), offset_(byte_offset) {}

GrayImage::GrayImage(int width, int height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
    if (width_ < 1 || height_ < 1)
        throw std::invalid_argument("GrayImage: dimensions must be >= 1");
    if (pixels_.size() != static_cast<std::size_t>(width_) * height_)
        throw std::invalid_argument("GrayImage: pixel count does not match dimensions");
}

GrayImage::GrayImage(int width, int height, std::uint8_t fill)
    : width_(width), height_(height) {
    if (width_ < 1 || height_ < 1)
        throw std::invalid_argument("GrayImage: dimensions must be >= 1");
    pixels_.assign(static_cast<std::size_t>(width_) * height_, fill);
}

WindowSpec::WindowSpec(int side_) : side(side_) {
    if (side < 3 || side % 2 == 0)
        throw std::invalid_argument("WindowSpec: side must be odd and >= 3");
}

GrayImage load_pgm(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5'))
        throw PgmError("not a PGM: expected magic \"P2\" or \"P5\"", 0);
    const bool ascii = bytes[1] == '2';

    Cursor cur{bytes, 2};
    const long width = cur.read_number("width");
    const long height = cur.read_number("height");
    if (width < 1 || height < 1)
        throw PgmError("image dimensions must be >= 1", cur.pos);
    const std::size_t maxval_at = cur.pos;
    const long maxval = cur.read_number("maxval");
    if (maxval > 255)
        throw PgmError("maxval " + std::to_string(maxval) + " exceeds 255", maxval_at);
    if (maxval < 1)
        throw PgmError("maxval must be >= 1", maxval_at);

    const std::size_t count = static_cast<std::size_t>(width) * height;
    std::vector<std::uint8_t> pixels;
    pixels.reserve(count);

    if (ascii) {
        for (std::size_t i = 0; i < count; ++i) {
            cur.skip_space_and_comments();
            if (cur.eof())
                throw PgmError("truncated pixel data: got " + std::to_string(i) +
                                   " of " + std::to_string(count) + " values",
                               bytes.size());
            const std::size_t at = cur.pos;
            const long v = cur.read_number("pixel value");
            if (v > maxval)
                throw PgmError("pixel value " + std::to_string(v) + " exceeds maxval " +
                                   std::to_string(maxval),
                               at);
            pixels.push_back(static_cast<std::uint8_t>(v));
        }
    } else {
        // exactly one whitespace byte separates the maxval from the raster
        if (cur.eof() || !std::isspace(cur.peek()))
            throw PgmError("expected single whitespace after maxval", cur.pos);
        ++cur.pos;
        if (bytes.size() - cur.pos < count)
            throw PgmError("truncated pixel data: got " +
                               std::to_string(bytes.size() - cur.pos) + " of " +
                               std::to_string(count) + " bytes",
                           bytes.size());
        for (std::size_t i = 0; i < count; ++i) {
            const std::uint8_t v = bytes[cur.pos + i];
            if (v > maxval)
                throw PgmError("pixel value " + std::to_string(int(v)) + " exceeds maxval " +
                                   std::to_string(maxval),
                               cur.pos + i);
            pixels.push_back(v);
        }
    }
    return GrayImage(static_cast<int>(width), static_cast<int>(height), std::move(pixels));
}

std::vector<std::uint8_t> save_pgm(const GrayImage& image, bool ascii) {
    std::string header = ascii ? "P2\n" : "P5\n";
    header += std::to_string(image.width()) + " " + std::to_string(image.height()) + "\n255\n";

    std::vector<std::uint8_t> out(header.begin(), header.end());
    if (ascii) {
        std::string body;
        for (int y = 0; y < image.height(); ++y) {
            for (int x = 0; x < image.width(); ++x) {
                if (x > 0) body += ' ';
                body += std::to_string(int(image.at(x, y)));
            }
            body += '\n';
        }
        out.insert(out.end(), body.begin(), body.end());
    } else {
        out.insert(out.end(), image.pixels().begin(), image.pixels().end());
    }
    return out;
}

GrayImage load_pgm_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return load_pgm(bytes);
}

void save_pgm_file(const GrayImage& image, const std::string& path, bool ascii) {
    const auto bytes = save_pgm(image, ascii);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

GrayImage quantize(const GrayImage& image, int levels) {
    if (levels < 2 || levels > 256)
        throw std::invalid_argument("quantize: levels must lie in [2, 256]");
    std::vector<std::uint8_t> out(image.pixels().size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<std::uint8_t>(int(image.pixels()[i]) * levels / 256);
    return GrayImage(image.width(), image.height(), std::move(out));
}

std::uint8_t window_pixel(const GrayImage& image, int cx, int cy, int dx, int dy) {
    if (cx < 0 || cx >= image.width() || cy < 0 || cy >= image.height())
        throw std::invalid_argument("window_pixel: center outside image");
    const int x = std::clamp(cx + dx, 0, image.width() - 1);
    const int y = std::clamp(cy + dy, 0, image.height() - 1);
    return image.at(x, y);
}

GrayImage extract_window(const GrayImage& image, int cx, int cy, int side) {
    if (side < 1) throw std::invalid_argument("extract_window: side must be >= 1");
    if (cx < 0 || cx >= image.width() || cy < 0 || cy >= image.height())
        throw std::invalid_argument("extract_window: center outside image");
    const int half = side / 2;
    std::vector<std::uint8_t> out;
    out.reserve(static_cast<std::size_t>(side) * side);
    for (int wy = 0; wy < side; ++wy) {
        const int y = std::clamp(cy - half + wy, 0, image.height() - 1);
        for (int wx = 0; wx < side; ++wx) {
            const int x = std::clamp(cx - half + wx, 0, image.width() - 1);
            out.push_back(image.at(x, y));
        }
    }
    return GrayImage(side, side, std::move(out));
}

} // namespace texseg
