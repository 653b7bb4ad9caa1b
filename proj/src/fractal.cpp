#include "texseg/fractal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "texseg/parallel.hpp"

namespace texseg {

namespace {

struct Offset {
    int dr;
    int dc;
};

// Octagonal neighborhood, 37 pixels in a 7x7 footprint. One entry per
// distance class beyond the center:
//
//         h g h
//       f e d e f
//     h e c b c e h
//     g d b a b d g
//     h e c b c e h
//       f e d e f
//         h g h
//
const std::array<std::vector<Offset>, 7> kOctagonClasses = {{
    /* b, d=1       */ {{-1, 0}, {1, 0}, {0, -1}, {0, 1}},
    /* c, d=sqrt 2  */ {{-1, -1}, {-1, 1}, {1, -1}, {1, 1}},
    /* d, d=2       */ {{-2, 0}, {2, 0}, {0, -2}, {0, 2}},
    /* e, d=sqrt 5  */ {{-2, -1}, {-2, 1}, {-1, -2}, {-1, 2}, {1, -2}, {1, 2}, {2, -1}, {2, 1}},
    /* f, d=sqrt 8  */ {{-2, -2}, {-2, 2}, {2, -2}, {2, 2}},
    /* g, d=3       */ {{-3, 0}, {3, 0}, {0, -3}, {0, 3}},
    /* h, d=sqrt 10 */ {{-3, -1}, {-3, 1}, {-1, -3}, {-1, 3}, {1, -3}, {1, 3}, {3, -1}, {3, 1}},
}};

int clamped(const GrayImage& image, int x, int y) {
    return image.at(std::clamp(x, 0, image.width() - 1),
                    std::clamp(y, 0, image.height() - 1));
}

// max - min over a clamped side x side window
int window_range(const GrayImage& image, int cx, int cy, int side) {
    const int half = side / 2;
    int lo = 255, hi = 0;
    for (int dy = -half; dy <= half; ++dy) {
        const int y = std::clamp(cy + dy, 0, image.height() - 1);
        const std::uint8_t* row = image.pixels().data() +
                                  static_cast<std::size_t>(y) * image.width();
        for (int dx = -half; dx <= half; ++dx) {
            const int v = row[std::clamp(cx + dx, 0, image.width() - 1)];
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    return hi - lo;
}

void check_center(const GrayImage& image, int cx, int cy, const char* who) {
    if (cx < 0 || cx >= image.width() || cy < 0 || cy >= image.height())
        throw std::invalid_argument(std::string(who) + ": center outside image");
}

const double kRangeLogRatio = std::log(9.0) - std::log(5.0);

} // namespace

FitLine fit_line(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size())
        throw std::invalid_argument("fit_line: mismatched lengths");
    if (xs.size() < 2)
        throw std::invalid_argument("fit_line: need at least 2 points");

    const double n = static_cast<double>(xs.size());
    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mean_x += xs[i];
        mean_y += ys[i];
    }
    mean_x /= n;
    mean_y /= n;

    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mean_x;
        sxx += dx * dx;
        sxy += dx * (ys[i] - mean_y);
    }
    if (sxx == 0.0)
        throw std::invalid_argument("fit_line: all abscissae identical");

    FitLine line;
    line.slope = sxy / sxx;
    line.intercept = mean_y - line.slope * mean_x;
    return line;
}

BoxCountSeries box_count_window(const GrayImage& window, std::span<const int> cells_per_axis) {
    if (window.width() != window.height())
        throw std::invalid_argument("box_count_window: window must be square");
    const int side = window.width();

    BoxCountSeries series;
    for (const int c : cells_per_axis) {
        if (c < 1)
            throw std::invalid_argument("box_count_window: cells_per_axis must be >= 1");
        if (c > side)
            throw std::invalid_argument("box_count_window: cells_per_axis " +
                                        std::to_string(c) + " exceeds window side " +
                                        std::to_string(side));

        // cell boundaries at round(i * side / c); side >= c keeps every cell nonempty
        std::vector<int> bounds(c + 1);
        for (int i = 0; i <= c; ++i)
            bounds[i] = static_cast<int>(std::lround(double(i) * side / c));

        std::int64_t n_total = 0;
        for (int ci = 0; ci < c; ++ci) {
            for (int cj = 0; cj < c; ++cj) {
                int lo = 255, hi = 0;
                for (int y = bounds[ci]; y < bounds[ci + 1]; ++y) {
                    for (int x = bounds[cj]; x < bounds[cj + 1]; ++x) {
                        const int v = window.at(x, y);
                        lo = std::min(lo, v);
                        hi = std::max(hi, v);
                    }
                }
                // gray boxes are box(g) = floor(g * c / 256)
                n_total += (hi * c) / 256 - (lo * c) / 256 + 1;
            }
        }
        series.cells_per_axis.push_back(c);
        series.counts.push_back(n_total);
    }
    return series;
}

double box_dimension(const GrayImage& window, std::span<const int> cells_per_axis) {
    const BoxCountSeries series = box_count_window(window, cells_per_axis);
    std::vector<double> xs(series.counts.size()), ys(series.counts.size());
    for (std::size_t i = 0; i < series.counts.size(); ++i) {
        xs[i] = std::log(double(series.cells_per_axis[i])); // ln(1/eps)
        ys[i] = std::log(double(series.counts[i]));
    }
    return fit_line(xs, ys).slope;
}

double box_dimension(const GrayImage& window) {
    return box_dimension(window, kBoxScales);
}

ScalarMap box_dimension_map(const GrayImage& image, int threads) {
    ScalarMap out(image.width(), image.height());
    double* values = out.data();
    parallel_chunks(image.height(), threads, [&](int y_begin, int y_end) {
        for (int y = y_begin; y < y_end; ++y)
            for (int x = 0; x < image.width(); ++x)
                values[static_cast<std::size_t>(y) * image.width() + x] =
                    box_dimension(extract_window(image, x, y, kBoxWindowSide));
    });
    return out;
}

const std::array<double, 7>& hurst_distances() {
    static const std::array<double, 7> distances = {
        1.0, std::sqrt(2.0), 2.0, std::sqrt(5.0), std::sqrt(8.0), 3.0, std::sqrt(10.0)};
    return distances;
}

HurstProfile hurst_profile(const GrayImage& image, int cx, int cy) {
    check_center(image, cx, cy, "hurst_profile");
    HurstProfile profile;
    int lo = image.at(cx, cy);
    int hi = lo;
    for (std::size_t k = 0; k < kOctagonClasses.size(); ++k) {
        for (const Offset& o : kOctagonClasses[k]) {
            const int v = clamped(image, cx + o.dc, cy + o.dr);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        profile.ranges[k] = hi - lo;
    }
    return profile;
}

double hurst_dimension(const HurstProfile& profile) {
    const bool flat = std::all_of(profile.ranges.begin(), profile.ranges.end(),
                                  [](int r) { return r == 0; });
    if (flat) return 0.0;

    static const std::array<double, 7> log_d = [] {
        std::array<double, 7> out;
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = std::log(hurst_distances()[i]);
        return out;
    }();

    std::array<double, 7> log_r;
    for (std::size_t i = 0; i < log_r.size(); ++i)
        log_r[i] = std::log(profile.ranges[i] == 0 ? 0.5 : double(profile.ranges[i]));
    return fit_line(log_d, log_r).slope;
}

ScalarMap hurst_dimension_map(const GrayImage& image, int threads) {
    ScalarMap out(image.width(), image.height());
    double* values = out.data();
    parallel_chunks(image.height(), threads, [&](int y_begin, int y_end) {
        for (int y = y_begin; y < y_end; ++y)
            for (int x = 0; x < image.width(); ++x)
                values[static_cast<std::size_t>(y) * image.width() + x] =
                    hurst_dimension(hurst_profile(image, x, y));
    });
    return out;
}

RangePair range_pair(const GrayImage& image, int cx, int cy) {
    check_center(image, cx, cy, "range_pair");
    RangePair pair;
    pair.r1 = window_range(image, cx, cy, RangePair::outer_side);
    pair.r2 = window_range(image, cx, cy, RangePair::inner_side);
    return pair;
}

double range_dimension(const GrayImage& image, int cx, int cy) {
    const RangePair pair = range_pair(image, cx, cy);
    return (pair.r1 - pair.r2) / kRangeLogRatio;
}

ScalarMap range_dimension_map(const GrayImage& image, int threads) {
    ScalarMap out(image.width(), image.height());
    double* values = out.data();
    parallel_chunks(image.height(), threads, [&](int y_begin, int y_end) {
        for (int y = y_begin; y < y_end; ++y)
            for (int x = 0; x < image.width(); ++x)
                values[static_cast<std::size_t>(y) * image.width() + x] =
                    range_dimension(image, x, y);
    });
    return out;
}

} // namespace texseg
