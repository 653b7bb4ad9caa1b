// texseg: texture feature and fractal-dimension maps over PGM images,
// with histogram export and threshold segmentation.
//
// Maps are written to a lossless binary float format (FMAP) so thresholds
// act on exact values; --out-view adds an 8-bit min-max rescaled PGM for
// inspection.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "texseg/fmap.hpp"
#include "texseg/fractal.hpp"
#include "texseg/glcm.hpp"
#include "texseg/parallel.hpp"
#include "texseg/raster.hpp"
#include "texseg/segmentation.hpp"

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

texseg::Feature parse_feature(const std::string& name) {
    for (texseg::Feature f : {texseg::Feature::energy, texseg::Feature::entropy,
                              texseg::Feature::contrast, texseg::Feature::homogeneity,
                              texseg::Feature::correlation}) {
        if (name == texseg::feature_name(f)) return f;
    }
    throw CLI::ValidationError("--feature", "unknown feature '" + name + "'");
}

std::vector<texseg::Displacement> parse_candidates(const std::string& text) {
    std::vector<texseg::Displacement> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t next = text.find(';', pos);
        const std::string item = text.substr(pos, next == std::string::npos ? next : next - pos);
        int dx = 0, dy = 0;
        char trailing = 0;
        if (std::sscanf(item.c_str(), " %d , %d %c", &dx, &dy, &trailing) != 2)
            throw CLI::ValidationError("--candidates",
                                       "malformed candidate '" + item +
                                           "', expected \"dx,dy\" entries separated by ';'");
        if (dx == 0 && dy == 0)
            throw CLI::ValidationError("--candidates", "candidate 0,0 is not a displacement");
        out.push_back({dx, dy});
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    if (out.empty())
        throw CLI::ValidationError("--candidates", "empty candidate list");
    return out;
}

std::pair<double, double> map_min_max(const texseg::ScalarMap& map) {
    const auto [lo, hi] = std::minmax_element(map.values().begin(), map.values().end());
    return {*lo, *hi};
}

void write_outputs(const texseg::ScalarMap& map, const std::string& out_map,
                   const std::string& out_view) {
    if (!out_map.empty()) texseg::write_fmap_file(map, out_map);
    if (!out_view.empty()) texseg::save_pgm_file(texseg::rescale_for_display(map), out_view);
}

struct GlcmArgs {
    std::string input;
    std::string feature = "energy";
    int dx = 0;
    int dy = 1;
    int window = 17;
    int levels = 32;
    int threads = 0;
    std::string out_map;
    std::string out_view;
};

struct SelectArgs {
    std::string input;
    std::string candidates;
    int levels = 32;
};

struct FractalArgs {
    std::string input;
    std::string method;
    int threads = 0;
    std::string out_map;
    std::string out_view;
};

struct HistogramArgs {
    std::string input;
    int bins = 64;
    std::string out;
};

struct SegmentArgs {
    std::string input;
    std::optional<double> threshold;
    std::optional<double> percentile;
    std::string out;
};

int run_glcm(const GlcmArgs& a) {
    if (a.dx == 0 && a.dy == 0) {
        std::cerr << "texseg glcm: --dx/--dy must not both be 0\n";
        return 1;
    }
    const texseg::Feature feature = parse_feature(a.feature);
    const int threads = texseg::resolve_thread_count(a.threads);
    std::cout << "# texseg glcm input=" << a.input << " feature=" << a.feature << " dx=" << a.dx
              << " dy=" << a.dy << " window=" << a.window << " levels=" << a.levels
              << " threads=" << threads << " out-map=" << (a.out_map.empty() ? "-" : a.out_map)
              << " out-view=" << (a.out_view.empty() ? "-" : a.out_view) << "\n";

    const texseg::GrayImage image = texseg::load_pgm_file(a.input);
    const texseg::GrayImage quantized = texseg::quantize(image, a.levels);
    const texseg::ScalarMap map =
        texseg::feature_map(quantized, feature, {a.dx, a.dy}, texseg::WindowSpec(a.window),
                            a.levels, threads);
    write_outputs(map, a.out_map, a.out_view);

    const auto [lo, hi] = map_min_max(map);
    std::cout << "feature=" << a.feature << " min=" << fmt_double(lo)
              << " max=" << fmt_double(hi) << "\n";
    return 0;
}

int run_glcm_select(const SelectArgs& a) {
    const std::vector<texseg::Displacement> candidates = parse_candidates(a.candidates);
    std::cout << "# texseg glcm-select input=" << a.input << " candidates=" << a.candidates
              << " levels=" << a.levels << "\n";

    const texseg::GrayImage image = texseg::load_pgm_file(a.input);
    const texseg::GrayImage quantized = texseg::quantize(image, a.levels);
    const auto [winner, chi] = texseg::select_displacement(quantized, candidates, a.levels);
    std::cout << winner.dx << "," << winner.dy << " chi2=" << fmt_double(chi) << "\n";
    return 0;
}

int run_fractal(const FractalArgs& a) {
    const int threads = texseg::resolve_thread_count(a.threads);
    std::cout << "# texseg fractal input=" << a.input << " method=" << a.method
              << " threads=" << threads << " out-map=" << a.out_map
              << " out-view=" << (a.out_view.empty() ? "-" : a.out_view) << "\n";

    const texseg::GrayImage image = texseg::load_pgm_file(a.input);
    texseg::ScalarMap map(1, 1);
    if (a.method == "box")
        map = texseg::box_dimension_map(image, threads);
    else if (a.method == "hurst")
        map = texseg::hurst_dimension_map(image, threads);
    else if (a.method == "range")
        map = texseg::range_dimension_map(image, threads);
    else
        throw CLI::ValidationError("--method", "unknown method '" + a.method + "'");
    write_outputs(map, a.out_map, a.out_view);

    const auto [lo, hi] = map_min_max(map);
    std::cout << "method=" << a.method << " min=" << fmt_double(lo)
              << " max=" << fmt_double(hi) << "\n";
    return 0;
}

int run_histogram(const HistogramArgs& a) {
    std::cout << "# texseg histogram input=" << a.input << " bins=" << a.bins
              << " out=" << a.out << "\n";
    const texseg::ScalarMap map = texseg::read_fmap_file(a.input);
    const texseg::Histogram hist = texseg::histogram(map, a.bins);

    std::string csv = "bin_lo,bin_hi,count\n";
    const double span = hist.hi - hist.lo;
    for (int i = 0; i < hist.bin_count(); ++i) {
        const double bin_lo = hist.lo + span * double(i) / hist.bin_count();
        const double bin_hi = hist.lo + span * double(i + 1) / hist.bin_count();
        csv += fmt_double(bin_lo) + "," + fmt_double(bin_hi) + "," +
               std::to_string(hist.counts[i]) + "\n";
    }
    std::ofstream out(a.out, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + a.out + " for writing");
    out << csv;
    if (!out) throw std::runtime_error("write failed: " + a.out);
    return 0;
}

int run_segment(const SegmentArgs& a) {
    if (a.threshold.has_value() == a.percentile.has_value()) {
        std::cerr << "texseg segment: exactly one of --threshold or --percentile is required\n";
        return 1;
    }
    std::cout << "# texseg segment input=" << a.input
              << (a.threshold ? " threshold=" + fmt_double(*a.threshold)
                              : " percentile=" + fmt_double(*a.percentile))
              << " out=" << a.out << "\n";

    const texseg::ScalarMap map = texseg::read_fmap_file(a.input);
    const double h = a.threshold ? *a.threshold : texseg::percentile_threshold(map, *a.percentile);
    const texseg::GrayImage segmented = texseg::threshold_segment(map, h);
    texseg::save_pgm_file(segmented, a.out);

    std::size_t black = 0;
    for (const std::uint8_t px : segmented.pixels())
        if (px == 0) ++black;
    std::cout << "threshold=" << fmt_double(h) << " black=" << black
              << " white=" << (segmented.pixels().size() - black) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"texture feature and fractal-dimension maps over PGM images"};
    app.require_subcommand(1);

    GlcmArgs glcm_args;
    auto* glcm = app.add_subcommand("glcm", "sliding-window co-occurrence feature map");
    glcm->add_option("input", glcm_args.input, "input PGM image")->required();
    glcm->add_option("--feature", glcm_args.feature,
                     "one of energy|entropy|contrast|homogeneity|correlation")
        ->required()
        ->check(CLI::IsMember({"energy", "entropy", "contrast", "homogeneity", "correlation"}));
    glcm->add_option("--dx", glcm_args.dx, "displacement row step (default 0)");
    glcm->add_option("--dy", glcm_args.dy, "displacement column step (default 1)");
    glcm->add_option("--window", glcm_args.window, "odd window side (default 17)")
        ->check(CLI::Validator(
            [](std::string& s) {
                int v = 0;
                try {
                    v = std::stoi(s);
                } catch (...) {
                    return std::string("not an integer");
                }
                return (v < 3 || v % 2 == 0) ? std::string("window side must be odd and >= 3")
                                             : std::string();
            },
            "ODD"));
    glcm->add_option("--levels", glcm_args.levels, "gray levels after quantization (default 32)")
        ->check(CLI::Range(2, 256));
    glcm->add_option("--threads", glcm_args.threads, "worker count, 0 = machine parallelism");
    glcm->add_option("--out-map", glcm_args.out_map, "write the float map (FMAP)");
    glcm->add_option("--out-view", glcm_args.out_view, "write a rescaled 8-bit view (PGM)");

    SelectArgs select_args;
    auto* select = app.add_subcommand("glcm-select",
                                      "rank displacement candidates by the chi-square statistic");
    select->add_option("input", select_args.input, "input PGM image")->required();
    select->add_option("--candidates", select_args.candidates,
                       "semicolon-separated \"dx,dy\" list, e.g. \"0,1;1,0\"")
        ->required();
    select->add_option("--levels", select_args.levels,
                       "gray levels after quantization (default 32)")
        ->check(CLI::Range(2, 256));

    FractalArgs fractal_args;
    auto* fractal = app.add_subcommand("fractal", "per-pixel fractal-dimension map");
    fractal->add_option("input", fractal_args.input, "input PGM image")->required();
    fractal->add_option("--method", fractal_args.method, "one of box|hurst|range")
        ->required()
        ->check(CLI::IsMember({"box", "hurst", "range"}));
    fractal->add_option("--threads", fractal_args.threads, "worker count, 0 = machine parallelism");
    fractal->add_option("--out-map", fractal_args.out_map, "write the float map (FMAP)")
        ->required();
    fractal->add_option("--out-view", fractal_args.out_view, "write a rescaled 8-bit view (PGM)");

    HistogramArgs histogram_args;
    auto* hist = app.add_subcommand("histogram", "histogram of a float map as CSV");
    hist->add_option("input", histogram_args.input, "input FMAP file")->required();
    hist->add_option("--bins", histogram_args.bins, "bin count (default 64)")
        ->check(CLI::Range(1, 1 << 20));
    hist->add_option("--out", histogram_args.out, "output CSV path")->required();

    SegmentArgs segment_args;
    auto* segment = app.add_subcommand("segment", "threshold a float map into a binary PGM");
    segment->add_option("input", segment_args.input, "input FMAP file")->required();
    segment->add_option("--threshold", segment_args.threshold,
                        "absolute threshold h: black where value > h");
    segment->add_option("--percentile", segment_args.percentile,
                        "percentile in [0, 100] used to derive h")
        ->check(CLI::Range(0.0, 100.0));
    segment->add_option("--out", segment_args.out, "output PGM path")->required();

    try {
        app.parse(argc, argv);
        if (glcm->parsed()) return run_glcm(glcm_args);
        if (select->parsed()) return run_glcm_select(select_args);
        if (fractal->parsed()) return run_fractal(fractal_args);
        if (hist->parsed()) return run_histogram(histogram_args);
        if (segment->parsed()) return run_segment(segment_args);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "texseg: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
