#include "texseg/glcm.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "texseg/parallel.hpp"

namespace texseg {

namespace {

void check_levels(int levels) {
    if (levels < 2 || levels > 256)
        throw std::invalid_argument("glcm: levels must lie in [2, 256]");
}

void check_pixels_below(const GrayImage& image, int levels) {
    for (std::size_t i = 0; i < image.pixels().size(); ++i) {
        if (image.pixels()[i] >= levels)
            throw std::invalid_argument(
                "glcm: pixel value " + std::to_string(int(image.pixels()[i])) +
                " >= levels " + std::to_string(levels) + "; quantize first");
    }
}

// Row and column marginal sums of a normalized table.
struct Marginals {
    std::array<double, 256> row{};
    std::array<double, 256> col{};
};

Marginals marginal_sums(const GlcmProbabilities& p) {
    Marginals m;
    const int g_count = p.levels;
    for (int g = 0; g < g_count; ++g) {
        for (int gp = 0; gp < g_count; ++gp) {
            const double v = p.at(g, gp);
            m.row[g] += v;
            m.col[gp] += v;
        }
    }
    return m;
}

} // namespace

const char* feature_name(Feature f) {
    switch (f) {
        case Feature::energy: return "energy";
        case Feature::entropy: return "entropy";
        case Feature::contrast: return "contrast";
        case Feature::homogeneity: return "homogeneity";
        case Feature::correlation: return "correlation";
    }
    return "?";
}

CooccurrenceMatrix compute_glcm(const GrayImage& image, Displacement tau, int levels) {
    check_levels(levels);
    if (tau.dx == 0 && tau.dy == 0)
        throw std::invalid_argument("glcm: displacement must be nonzero");
    check_pixels_below(image, levels);

    CooccurrenceMatrix m;
    m.levels = levels;
    m.counts.assign(static_cast<std::size_t>(levels) * levels, 0);

    const int h = image.height();
    const int w = image.width();
    const int r0 = std::max(0, -tau.dx);
    const int r1 = h - std::max(0, tau.dx);
    const int c0 = std::max(0, -tau.dy);
    const int c1 = w - std::max(0, tau.dy);
    for (int r = r0; r < r1; ++r) {
        for (int c = c0; c < c1; ++c) {
            const int g = image.at(c, r);
            const int gp = image.at(c + tau.dy, r + tau.dx);
            ++m.counts[static_cast<std::size_t>(g) * levels + gp];
            ++m.total;
        }
    }
    if (m.total == 0)
        throw std::invalid_argument("glcm: displacement leaves no valid pixel pairs");
    return m;
}

GlcmProbabilities normalize(const CooccurrenceMatrix& m) {
    if (m.total == 0)
        throw std::invalid_argument("glcm: cannot normalize an empty matrix");
    GlcmProbabilities p;
    p.levels = m.levels;
    p.p.resize(m.counts.size());
    const double total = static_cast<double>(m.total);
    for (std::size_t i = 0; i < m.counts.size(); ++i)
        p.p[i] = static_cast<double>(m.counts[i]) / total;
    return p;
}

MarginalStats marginal_stats(const GlcmProbabilities& p) {
    check_levels(p.levels);
    const Marginals m = marginal_sums(p);
    MarginalStats s;
    for (int g = 0; g < p.levels; ++g) {
        s.mu1 += g * m.row[g];
        s.mu2 += g * m.col[g];
    }
    double var1 = 0.0, var2 = 0.0;
    for (int g = 0; g < p.levels; ++g) {
        var1 += (g - s.mu1) * (g - s.mu1) * m.row[g];
        var2 += (g - s.mu2) * (g - s.mu2) * m.col[g];
    }
    s.sigma1 = std::sqrt(var1);
    s.sigma2 = std::sqrt(var2);
    return s;
}

double energy(const GlcmProbabilities& p) {
    double sum = 0.0;
    for (double v : p.p) sum += v * v;
    return sum;
}

double entropy(const GlcmProbabilities& p) {
    double sum = 0.0;
    for (double v : p.p)
        if (v > 0.0) sum -= v * std::log(v);
    return sum;
}

double contrast(const GlcmProbabilities& p) {
    double sum = 0.0;
    for (int g = 0; g < p.levels; ++g)
        for (int gp = 0; gp < p.levels; ++gp)
            sum += double((g - gp) * (g - gp)) * p.at(g, gp);
    return sum;
}

double local_homogeneity(const GlcmProbabilities& p) {
    double sum = 0.0;
    for (int g = 0; g < p.levels; ++g)
        for (int gp = 0; gp < p.levels; ++gp)
            sum += p.at(g, gp) / (1.0 + double((g - gp) * (g - gp)));
    return sum;
}

double correlation(const GlcmProbabilities& p, const MarginalStats& stats) {
    if (stats.sigma1 <= 0.0 || stats.sigma2 <= 0.0) return 0.0;
    double cov = 0.0;
    for (int g = 0; g < p.levels; ++g)
        for (int gp = 0; gp < p.levels; ++gp)
            cov += (g - stats.mu1) * (gp - stats.mu2) * p.at(g, gp);
    return cov / (stats.sigma1 * stats.sigma2);
}

double correlation(const GlcmProbabilities& p) {
    return correlation(p, marginal_stats(p));
}

double chi_square(const GlcmProbabilities& p) {
    check_levels(p.levels);
    const Marginals m = marginal_sums(p);
    double sum = 0.0;
    for (int g = 0; g < p.levels; ++g) {
        for (int gp = 0; gp < p.levels; ++gp) {
            const double v = p.at(g, gp);
            // a nonzero cell forces both of its marginals nonzero
            if (v > 0.0) sum += v * v / (m.row[g] * m.col[gp]);
        }
    }
    return sum;
}

double apply_feature(const GlcmProbabilities& p, Feature f) {
    switch (f) {
        case Feature::energy: return energy(p);
        case Feature::entropy: return entropy(p);
        case Feature::contrast: return contrast(p);
        case Feature::homogeneity: return local_homogeneity(p);
        case Feature::correlation: return correlation(p);
    }
    throw std::invalid_argument("glcm: unknown feature");
}

std::pair<Displacement, double> select_displacement(const GrayImage& image,
                                                    std::span<const Displacement> candidates,
                                                    int levels) {
    if (candidates.empty())
        throw std::invalid_argument("select_displacement: no candidates");
    Displacement best{0, 0};
    double best_chi = 0.0;
    bool have = false;
    for (const Displacement& d : candidates) {
        const double chi = chi_square(normalize(compute_glcm(image, d, levels)));
        if (!have || chi > best_chi) {
            best = d;
            best_chi = chi;
            have = true;
        }
    }
    return {best, best_chi};
}

ScalarMap feature_map(const GrayImage& image, Feature feature, Displacement tau,
                      WindowSpec win, int levels, int threads) {
    check_levels(levels);
    if (tau.dx == 0 && tau.dy == 0)
        throw std::invalid_argument("feature_map: displacement must be nonzero");
    if (std::abs(tau.dx) >= win.side || std::abs(tau.dy) >= win.side)
        throw std::invalid_argument("feature_map: displacement exceeds the window side");
    check_pixels_below(image, levels);

    const int w = image.width();
    const int h = image.height();
    const int side = win.side;
    const int half = side / 2;
    const std::size_t cells = static_cast<std::size_t>(levels) * levels;

    // window-local pair rectangle; nonempty because |tau| < side
    const int wr0 = std::max(0, -tau.dx);
    const int wr1 = side - std::max(0, tau.dx);
    const int wc0 = std::max(0, -tau.dy);
    const int wc1 = side - std::max(0, tau.dy);
    const double total = double(wr1 - wr0) * double(wc1 - wc0);

    ScalarMap out(w, h);
    double* out_values = out.data();

    parallel_chunks(h, threads, [&](int y_begin, int y_end) {
        std::vector<std::uint32_t> counts(cells);
        GlcmProbabilities prob;
        prob.levels = levels;
        prob.p.resize(cells);
        std::vector<int> rows(side), cols(side);

        for (int y = y_begin; y < y_end; ++y) {
            for (int i = 0; i < side; ++i)
                rows[i] = std::clamp(y - half + i, 0, h - 1);
            for (int x = 0; x < w; ++x) {
                for (int i = 0; i < side; ++i)
                    cols[i] = std::clamp(x - half + i, 0, w - 1);

                std::fill(counts.begin(), counts.end(), 0u);
                for (int wr = wr0; wr < wr1; ++wr) {
                    const std::uint8_t* row_a = image.pixels().data() +
                                                static_cast<std::size_t>(rows[wr]) * w;
                    const std::uint8_t* row_b = image.pixels().data() +
                                                static_cast<std::size_t>(rows[wr + tau.dx]) * w;
                    for (int wc = wc0; wc < wc1; ++wc) {
                        const int g = row_a[cols[wc]];
                        const int gp = row_b[cols[wc + tau.dy]];
                        ++counts[static_cast<std::size_t>(g) * levels + gp];
                    }
                }
                for (std::size_t i = 0; i < cells; ++i)
                    prob.p[i] = counts[i] / total;
                out_values[static_cast<std::size_t>(y) * w + x] = apply_feature(prob, feature);
            }
        }
    });
    return out;
}

} // namespace texseg
