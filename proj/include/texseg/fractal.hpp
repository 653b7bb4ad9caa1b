#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "texseg/raster.hpp"
#include "texseg/scalar_map.hpp"

namespace texseg {

/// Ordinary least-squares line y = slope * x + intercept.
struct FitLine {
    double slope = 0.0;
    double intercept = 0.0;
};

/// Requires equal lengths >= 2 and at least two distinct abscissae.
FitLine fit_line(std::span<const double> xs, std::span<const double> ys);

/// Window side used by the per-pixel box-counting estimator.
inline constexpr int kBoxWindowSide = 17;

/// The five grid refinements c = 1/epsilon used for the log-log fit.
inline constexpr std::array<int, 5> kBoxScales{2, 3, 4, 8, 16};

/// Covering-box counts N(eps) per grid refinement c = 1/eps. Always
/// c^2 <= N <= c^3: each spatial cell contributes at least one gray box
/// and at most c of them.
struct BoxCountSeries {
    std::vector<int> cells_per_axis;
    std::vector<std::int64_t> counts;

    double epsilon(std::size_t i) const { return 1.0 / cells_per_axis[i]; }
};

/// Counts boxes over a square window: the window is split into c x c
/// near-equal spatial cells (boundaries at round(i * side / c)), the gray
/// range [0, 256) into c boxes, and each cell contributes
/// box(max) - box(min) + 1. Requires window side >= every c.
BoxCountSeries box_count_window(const GrayImage& window, std::span<const int> cells_per_axis);

/// Slope of ln N(eps) against ln(1/eps) over the given scales
/// (kBoxScales by default). A constant window yields exactly 2.
double box_dimension(const GrayImage& window, std::span<const int> cells_per_axis);
double box_dimension(const GrayImage& window);

/// Per-pixel box dimension over centered 17x17 windows, edge-clamped.
ScalarMap box_dimension_map(const GrayImage& image, int threads = 0);

/// The seven nonzero center distances of the 37-pixel octagonal
/// neighborhood: 1, sqrt 2, 2, sqrt 5, sqrt 8, 3, sqrt 10.
const std::array<double, 7>& hurst_distances();

/// Cumulative brightness ranges of the octagonal neighborhood: ranges[k]
/// is max - min over all pixels within hurst_distances()[k] of the
/// center (center included), so the sequence is non-decreasing.
struct HurstProfile {
    std::array<int, 7> ranges{};
};

HurstProfile hurst_profile(const GrayImage& image, int cx, int cy);

/// Slope of ln r against ln d over the seven distance classes. A flat
/// profile (all ranges zero) yields 0; an isolated zero range enters the
/// fit as half a gray level.
double hurst_dimension(const HurstProfile& profile);

/// Per-pixel Hurst slope over the octagonal neighborhood, edge-clamped.
ScalarMap hurst_dimension_map(const GrayImage& image, int threads = 0);

/// Brightness ranges of the nested centered windows used by the range
/// estimator; r1 >= r2 because the 5-window lies inside the 9-window.
struct RangePair {
    static constexpr int outer_side = 9;
    static constexpr int inner_side = 5;
    int r1 = 0;
    int r2 = 0;
};

RangePair range_pair(const GrayImage& image, int cx, int cy);

/// (r1 - r2) / (ln 9 - ln 5); non-negative, at most 255/(ln 9 - ln 5).
double range_dimension(const GrayImage& image, int cx, int cy);

/// Per-pixel range estimator, edge-clamped.
ScalarMap range_dimension_map(const GrayImage& image, int threads = 0);

} // namespace texseg
