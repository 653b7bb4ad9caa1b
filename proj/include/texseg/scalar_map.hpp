#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace texseg {

/// Per-pixel real-valued map with the dimensions of its source image.
/// Values are finite reals; (x, y) is (column, row), row-major storage.
class ScalarMap {
public:
    ScalarMap(int width, int height)
        : width_(width), height_(height) {
        if (width_ < 1 || height_ < 1)
            throw std::invalid_argument("ScalarMap: dimensions must be >= 1");
        values_.assign(static_cast<std::size_t>(width_) * height_, 0.0);
    }

    ScalarMap(int width, int height, std::vector<double> values)
        : width_(width), height_(height), values_(std::move(values)) {
        if (width_ < 1 || height_ < 1)
            throw std::invalid_argument("ScalarMap: dimensions must be >= 1");
        if (values_.size() != static_cast<std::size_t>(width_) * height_)
            throw std::invalid_argument("ScalarMap: value count does not match dimensions");
    }

    int width() const { return width_; }
    int height() const { return height_; }
    const std::vector<double>& values() const { return values_; }

    double at(int x, int y) const {
        return values_[static_cast<std::size_t>(y) * width_ + x];
    }
    void set(int x, int y, double v) {
        values_[static_cast<std::size_t>(y) * width_ + x] = v;
    }
    double* data() { return values_.data(); }

    bool operator==(const ScalarMap&) const = default;

private:
    int width_;
    int height_;
    std::vector<double> values_;
};

} // namespace texseg
