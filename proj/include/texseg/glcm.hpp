#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "texseg/raster.hpp"
#include "texseg/scalar_map.hpp"

namespace texseg {

/// Pixel-pair offset: dx steps rows, dy steps columns, so {0, 1} pairs
/// each pixel with its right-hand neighbor in the same row. Must not be
/// the zero offset.
struct Displacement {
    int dx;
    int dy;
    bool operator==(const Displacement&) const = default;
};

/// G x G pair-count table for one displacement. counts[g][g'] is the
/// number of in-image pixel pairs whose first pixel has gray level g and
/// whose displaced partner has g'; pairs whose partner falls outside the
/// image are not counted.
struct CooccurrenceMatrix {
    int levels = 0;
    std::vector<std::uint64_t> counts; // levels * levels, row-major [g][g']
    std::uint64_t total = 0;

    std::uint64_t at(int g, int gp) const {
        return counts[static_cast<std::size_t>(g) * levels + gp];
    }
};

/// Normalized co-occurrence table: each cell holds counts / total, so the
/// cells sum to 1.
struct GlcmProbabilities {
    int levels = 0;
    std::vector<double> p; // levels * levels, row-major [g][g']

    double at(int g, int gp) const {
        return p[static_cast<std::size_t>(g) * levels + gp];
    }
};

/// Means and standard deviations of the row and column marginals of a
/// normalized table.
struct MarginalStats {
    double mu1 = 0.0;
    double mu2 = 0.0;
    double sigma1 = 0.0;
    double sigma2 = 0.0;
};

enum class Feature { energy, entropy, contrast, homogeneity, correlation };

const char* feature_name(Feature f);

CooccurrenceMatrix compute_glcm(const GrayImage& image, Displacement tau, int levels);

GlcmProbabilities normalize(const CooccurrenceMatrix& m);

MarginalStats marginal_stats(const GlcmProbabilities& p);

/// Sum of squared cell probabilities; in (0, 1], 1 iff a single cell
/// carries all mass.
double energy(const GlcmProbabilities& p);

/// -sum p ln p with 0 ln 0 = 0; ranges over [0, ln(G^2)].
double entropy(const GlcmProbabilities& p);

/// sum (g - g')^2 p; zero iff all mass lies on the diagonal.
double contrast(const GlcmProbabilities& p);

/// sum p / (1 + (g - g')^2); in (0, 1], 1 iff all mass on the diagonal.
double local_homogeneity(const GlcmProbabilities& p);

/// Linear dependence of the pair gray levels, in [-1, 1]. Defined as 0
/// when either marginal deviation vanishes (constant window).
double correlation(const GlcmProbabilities& p, const MarginalStats& stats);
double correlation(const GlcmProbabilities& p);

/// sum p(g,g')^2 / (p(g,.) p(.,g')); >= 1 for any table, with equality
/// iff the table is the outer product of its marginals.
double chi_square(const GlcmProbabilities& p);

double apply_feature(const GlcmProbabilities& p, Feature f);

/// Picks the candidate whose whole-image table maximizes chi_square;
/// ties go to the earliest candidate. Returns the winner and its score.
std::pair<Displacement, double> select_displacement(const GrayImage& image,
                                                    std::span<const Displacement> candidates,
                                                    int levels);

/// Per-pixel feature over the centered window (edge pixels replicated at
/// the borders). Pairs are counted only when both endpoints lie inside
/// the window. Output has the source dimensions; results do not depend
/// on the worker count.
ScalarMap feature_map(const GrayImage& image, Feature feature, Displacement tau,
                      WindowSpec win, int levels, int threads = 0);

} // namespace texseg
