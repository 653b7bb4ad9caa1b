#include "texseg/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace texseg {

Histogram histogram(const ScalarMap& map, int bins) {
    if (bins < 1)
        throw std::invalid_argument("histogram: bins must be >= 1");
    const auto [lo_it, hi_it] = std::minmax_element(map.values().begin(), map.values().end());

    Histogram h;
    h.lo = *lo_it;
    h.hi = *hi_it;
    h.counts.assign(bins, 0);
    if (h.lo == h.hi) {
        h.counts[0] = map.values().size();
        return h;
    }
    const double span = h.hi - h.lo;
    for (const double v : map.values()) {
        const int bin = std::min(static_cast<int>((v - h.lo) / span * bins), bins - 1);
        ++h.counts[bin];
    }
    return h;
}

double percentile_threshold(const ScalarMap& map, double p) {
    if (p < 0.0 || p > 100.0)
        throw std::invalid_argument("percentile_threshold: p must lie in [0, 100]");
    std::vector<double> sorted = map.values();
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    // smallest k with (k+1)/n >= p/100
    const double wanted = p * double(n) / 100.0;
    std::size_t k = wanted <= 1.0 ? 0 : static_cast<std::size_t>(std::ceil(wanted)) - 1;
    k = std::min(k, n - 1);
    return sorted[k];
}

GrayImage threshold_segment(const ScalarMap& map, double h) {
    std::vector<std::uint8_t> out(map.values().size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = map.values()[i] > h ? 0 : 255;
    return GrayImage(map.width(), map.height(), std::move(out));
}

GrayImage rescale_for_display(const ScalarMap& map) {
    const auto [lo_it, hi_it] = std::minmax_element(map.values().begin(), map.values().end());
    const double lo = *lo_it;
    const double hi = *hi_it;

    std::vector<std::uint8_t> out(map.values().size());
    if (lo == hi) {
        std::fill(out.begin(), out.end(), std::uint8_t{128});
    } else {
        const double span = hi - lo;
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = static_cast<std::uint8_t>(
                std::floor((map.values()[i] - lo) / span * 255.0 + 0.5));
    }
    return GrayImage(map.width(), map.height(), std::move(out));
}

} // namespace texseg
