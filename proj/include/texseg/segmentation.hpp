#pragma once

#include <cstdint>
#include <vector>

#include "texseg/raster.hpp"
#include "texseg/scalar_map.hpp"

namespace texseg {

/// Equal-width histogram over a map's value range. Bin counts sum to the
/// pixel count of the source map.
struct Histogram {
    double lo = 0.0;
    double hi = 0.0;
    std::vector<std::uint64_t> counts;

    int bin_count() const { return static_cast<int>(counts.size()); }
};

/// lo/hi are the map minimum/maximum; value v lands in bin
/// min(floor((v - lo) / (hi - lo) * bins), bins - 1). A constant map puts
/// everything in bin 0.
Histogram histogram(const ScalarMap& map, int bins);

/// Nearest-rank percentile: the smallest map value v such that at least
/// p percent of all values are <= v. p = 0 gives the minimum, p = 100
/// the maximum.
double percentile_threshold(const ScalarMap& map, double p);

/// Recolors the map: black (0) where the value exceeds h, white (255)
/// where it does not.
GrayImage threshold_segment(const ScalarMap& map, double h);

/// Linear min-max rescale to [0, 255] with rounding half-up. A constant
/// map renders as mid-gray 128.
GrayImage rescale_for_display(const ScalarMap& map);

} // namespace texseg
