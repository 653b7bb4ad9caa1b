#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "test_support.hpp"
#include "texseg/fmap.hpp"
#include "texseg/fractal.hpp"
#include "texseg/raster.hpp"
#include "texseg/segmentation.hpp"

using testsupport::run_cli;
using testsupport::TempDir;

namespace {

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

/// First non-comment stdout line.
std::string result_line(const std::string& output) {
    std::size_t pos = 0;
    while (pos < output.size()) {
        std::size_t end = output.find('\n', pos);
        if (end == std::string::npos) end = output.size();
        const std::string line = output.substr(pos, end - pos);
        if (!line.empty() && line[0] != '#') return line;
        pos = end + 1;
    }
    return "";
}

} // namespace

TEST_CASE("cli glcm on a constant image writes the energy extremes") {
    TempDir dir("cli-glcm");
    const texseg::GrayImage img(12, 10, std::uint8_t{99});
    texseg::save_pgm_file(img, dir.file("in.pgm"));

    const auto res = run_cli("glcm " + dir.file("in.pgm") +
                             " --feature energy --out-map " + dir.file("m.fmap") +
                             " --out-view " + dir.file("v.pgm"));
    REQUIRE(res.exit_code == 0);
    CHECK(contains(res.output, "# texseg glcm"));
    CHECK(result_line(res.output) == "feature=energy min=1 max=1");

    const auto map = texseg::read_fmap_file(dir.file("m.fmap"));
    CHECK(map.width() == 12);
    CHECK(map.height() == 10);
    for (double v : map.values()) REQUIRE(v == 1.0);

    const auto view = texseg::load_pgm_file(dir.file("v.pgm"));
    for (auto px : view.pixels()) REQUIRE(px == 128);
}

TEST_CASE("cli glcm emits a map with the source dimensions") {
    TempDir dir("cli-glcm-dims");
    texseg::GrayImage img(5, 5, std::uint8_t{0});
    for (int y = 0; y < 5; ++y)
        for (int x = 0; x < 5 - y; ++x) img.set(x, y, 255);
    texseg::save_pgm_file(img, dir.file("in.pgm"));

    const auto res = run_cli("glcm " + dir.file("in.pgm") +
                             " --feature entropy --window 5 --out-map " + dir.file("m.fmap"));
    REQUIRE(res.exit_code == 0);
    const auto map = texseg::read_fmap_file(dir.file("m.fmap"));
    CHECK(map.width() == 5);
    CHECK(map.height() == 5);
}

TEST_CASE("cli glcm rejects bad arguments") {
    TempDir dir("cli-glcm-bad");
    texseg::save_pgm_file(texseg::GrayImage(8, 8, std::uint8_t{1}), dir.file("in.pgm"));

    const auto bad_feature = run_cli("glcm " + dir.file("in.pgm") + " --feature blorp");
    CHECK(bad_feature.exit_code != 0);
    CHECK(contains(bad_feature.output, "--feature"));

    const auto zero_tau = run_cli("glcm " + dir.file("in.pgm") +
                                  " --feature energy --dx 0 --dy 0");
    CHECK(zero_tau.exit_code != 0);
    CHECK(contains(zero_tau.output, "--dx"));

    const auto even_window = run_cli("glcm " + dir.file("in.pgm") +
                                     " --feature energy --window 6");
    CHECK(even_window.exit_code != 0);

    const auto missing = run_cli("glcm " + dir.file("nope.pgm") + " --feature energy");
    CHECK(missing.exit_code != 0);
}

TEST_CASE("cli glcm-select echoes a single candidate") {
    TempDir dir("cli-select-one");
    texseg::save_pgm_file(testsupport::random_image(10, 10, 255, 3), dir.file("in.pgm"));
    const auto res = run_cli("glcm-select " + dir.file("in.pgm") + " --candidates '0,1'");
    REQUIRE(res.exit_code == 0);
    CHECK(result_line(res.output).rfind("0,1 chi2=", 0) == 0);
}

TEST_CASE("cli glcm-select breaks ties by listing order") {
    TempDir dir("cli-select-tie");
    texseg::save_pgm_file(texseg::GrayImage(8, 8, std::uint8_t{100}), dir.file("in.pgm"));
    const auto res = run_cli("glcm-select " + dir.file("in.pgm") + " --candidates '1,0;0,1'");
    REQUIRE(res.exit_code == 0);
    CHECK(result_line(res.output) == "1,0 chi2=1");
}

TEST_CASE("cli glcm-select prefers the along-stripe displacement") {
    TempDir dir("cli-select-stripes");
    // identical rows, irregular columns: full dependence one row down
    std::mt19937 rng(9);
    std::uniform_int_distribution<int> level(0, 255);
    texseg::GrayImage img(16, 16, std::uint8_t{0});
    std::vector<std::uint8_t> pattern(16);
    for (auto& v : pattern) v = static_cast<std::uint8_t>(level(rng));
    for (int y = 0; y < 16; ++y)
        for (int x = 0; x < 16; ++x) img.set(x, y, pattern[x]);
    texseg::save_pgm_file(img, dir.file("in.pgm"));

    const auto res = run_cli("glcm-select " + dir.file("in.pgm") + " --candidates '0,1;1,0'");
    REQUIRE(res.exit_code == 0);
    CHECK(result_line(res.output).rfind("1,0 chi2=", 0) == 0);
}

TEST_CASE("cli glcm-select rejects malformed candidate lists") {
    TempDir dir("cli-select-bad");
    texseg::save_pgm_file(texseg::GrayImage(8, 8, std::uint8_t{1}), dir.file("in.pgm"));
    CHECK(run_cli("glcm-select " + dir.file("in.pgm") + " --candidates 'zap'").exit_code != 0);
    CHECK(run_cli("glcm-select " + dir.file("in.pgm") + " --candidates '0,0'").exit_code != 0);
    CHECK(run_cli("glcm-select " + dir.file("in.pgm") + " --candidates ''").exit_code != 0);
}

TEST_CASE("cli fractal box on a constant image writes all 2") {
    TempDir dir("cli-box");
    texseg::save_pgm_file(texseg::GrayImage(20, 14, std::uint8_t{55}), dir.file("in.pgm"));
    const auto res = run_cli("fractal " + dir.file("in.pgm") +
                             " --method box --out-map " + dir.file("d.fmap"));
    REQUIRE(res.exit_code == 0);
    CHECK(contains(res.output, "# texseg fractal"));
    CHECK(result_line(res.output) == "method=box min=2 max=2");
    const auto map = texseg::read_fmap_file(dir.file("d.fmap"));
    for (double v : map.values()) REQUIRE(v == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("cli fractal range on a constant image writes all 0") {
    TempDir dir("cli-range");
    texseg::save_pgm_file(texseg::GrayImage(9, 9, std::uint8_t{8}), dir.file("in.pgm"));
    const auto res = run_cli("fractal " + dir.file("in.pgm") +
                             " --method range --out-map " + dir.file("d.fmap"));
    REQUIRE(res.exit_code == 0);
    const auto map = texseg::read_fmap_file(dir.file("d.fmap"));
    for (double v : map.values()) REQUIRE(v == 0.0);
}

TEST_CASE("cli fractal range on the ramp hits the interior value") {
    TempDir dir("cli-ramp");
    texseg::save_pgm_file(testsupport::ramp_image(32, 16), dir.file("in.pgm"));
    const auto res = run_cli("fractal " + dir.file("in.pgm") +
                             " --method range --out-map " + dir.file("d.fmap"));
    REQUIRE(res.exit_code == 0);
    const auto map = texseg::read_fmap_file(dir.file("d.fmap"));
    CHECK(map.at(15, 8) == doctest::Approx(6.805190112072544).epsilon(1e-9));
}

TEST_CASE("cli fractal rejects unknown methods and requires the map output") {
    TempDir dir("cli-fractal-bad");
    texseg::save_pgm_file(texseg::GrayImage(8, 8, std::uint8_t{1}), dir.file("in.pgm"));
    CHECK(run_cli("fractal " + dir.file("in.pgm") + " --method spiral --out-map " +
                  dir.file("d.fmap"))
              .exit_code != 0);
    CHECK(run_cli("fractal " + dir.file("in.pgm") + " --method box").exit_code != 0);
}

TEST_CASE("cli histogram exports the documented CSV") {
    TempDir dir("cli-hist");
    texseg::write_fmap_file(texseg::ScalarMap(4, 1, {0.0, 1.0, 2.0, 3.0}), dir.file("m.fmap"));
    const auto res = run_cli("histogram " + dir.file("m.fmap") + " --bins 2 --out " +
                             dir.file("h.csv"));
    REQUIRE(res.exit_code == 0);

    const auto bytes = testsupport::read_file(dir.file("h.csv"));
    const std::string csv(bytes.begin(), bytes.end());
    CHECK(csv.rfind("bin_lo,bin_hi,count\n", 0) == 0);
    CHECK(contains(csv, ",2\n"));
    const auto rows = std::count(csv.begin(), csv.end(), '\n');
    CHECK(rows == 3); // header + 2 bins
}

TEST_CASE("cli histogram of a constant map fills one bin") {
    TempDir dir("cli-hist-const");
    texseg::write_fmap_file(texseg::ScalarMap(3, 3, std::vector<double>(9, 4.5)),
                            dir.file("m.fmap"));
    const auto res = run_cli("histogram " + dir.file("m.fmap") + " --bins 4 --out " +
                             dir.file("h.csv"));
    REQUIRE(res.exit_code == 0);
    const auto bytes = testsupport::read_file(dir.file("h.csv"));
    const std::string csv(bytes.begin(), bytes.end());
    CHECK(contains(csv, ",9\n"));
    CHECK(contains(csv, ",0\n"));
}

TEST_CASE("cli histogram rejects a truncated fmap") {
    TempDir dir("cli-hist-bad");
    auto bytes = texseg::encode_fmap(texseg::ScalarMap(2, 2, {1, 2, 3, 4}));
    bytes.pop_back();
    testsupport::write_file(dir.file("m.fmap"), bytes);
    const auto res = run_cli("histogram " + dir.file("m.fmap") + " --out " + dir.file("h.csv"));
    CHECK(res.exit_code != 0);
    CHECK(contains(res.output, "expected"));
}

TEST_CASE("cli segment thresholds a small map") {
    TempDir dir("cli-seg");
    texseg::write_fmap_file(texseg::ScalarMap(3, 1, {1.0, 2.0, 3.0}), dir.file("m.fmap"));
    const auto res = run_cli("segment " + dir.file("m.fmap") + " --threshold 2 --out " +
                             dir.file("s.pgm"));
    REQUIRE(res.exit_code == 0);
    CHECK(result_line(res.output) == "threshold=2 black=1 white=2");
    const auto seg = texseg::load_pgm_file(dir.file("s.pgm"));
    CHECK(seg.pixels() == std::vector<std::uint8_t>{255, 255, 0});
}

TEST_CASE("cli segment percentile 100 whitens everything") {
    TempDir dir("cli-seg-p100");
    texseg::write_fmap_file(texseg::ScalarMap(4, 4, std::vector<double>{
                                1, 5, 2, 8, 3, 7, 4, 6, 9, 0, 11, 12, 13, 14, 15, 10}),
                            dir.file("m.fmap"));
    const auto res = run_cli("segment " + dir.file("m.fmap") + " --percentile 100 --out " +
                             dir.file("s.pgm"));
    REQUIRE(res.exit_code == 0);
    const auto seg = texseg::load_pgm_file(dir.file("s.pgm"));
    for (auto px : seg.pixels()) REQUIRE(px == 255);
}

TEST_CASE("cli segment threshold below the minimum blackens everything") {
    TempDir dir("cli-seg-black");
    texseg::write_fmap_file(texseg::ScalarMap(2, 2, {1.5, 2.5, 3.5, 4.5}), dir.file("m.fmap"));
    const auto res = run_cli("segment " + dir.file("m.fmap") + " --threshold 1 --out " +
                             dir.file("s.pgm"));
    REQUIRE(res.exit_code == 0);
    const auto seg = texseg::load_pgm_file(dir.file("s.pgm"));
    for (auto px : seg.pixels()) REQUIRE(px == 0);
}

TEST_CASE("cli segment demands exactly one threshold flag") {
    TempDir dir("cli-seg-flags");
    texseg::write_fmap_file(texseg::ScalarMap(2, 1, {1.0, 2.0}), dir.file("m.fmap"));
    const auto both = run_cli("segment " + dir.file("m.fmap") +
                              " --threshold 1 --percentile 50 --out " + dir.file("s.pgm"));
    CHECK(both.exit_code != 0);
    const auto neither = run_cli("segment " + dir.file("m.fmap") + " --out " + dir.file("s.pgm"));
    CHECK(neither.exit_code != 0);
}

TEST_CASE("cli pipeline equals the library composition bit for bit") {
    TempDir dir("cli-pipeline");
    const auto img = testsupport::random_image(24, 18, 255, 271828);
    texseg::save_pgm_file(img, dir.file("in.pgm"));

    REQUIRE(run_cli("fractal " + dir.file("in.pgm") + " --method range --out-map " +
                    dir.file("d.fmap"))
                .exit_code == 0);
    REQUIRE(run_cli("segment " + dir.file("d.fmap") + " --percentile 50 --out " +
                    dir.file("s.pgm"))
                .exit_code == 0);

    const auto lib_map = texseg::range_dimension_map(img);
    CHECK(testsupport::read_file(dir.file("d.fmap")) == texseg::encode_fmap(lib_map));

    const auto lib_seg =
        texseg::threshold_segment(lib_map, texseg::percentile_threshold(lib_map, 50.0));
    CHECK(testsupport::read_file(dir.file("s.pgm")) == texseg::save_pgm(lib_seg, false));
}

TEST_CASE("cli help names the defaults") {
    const auto res = run_cli("--help");
    REQUIRE(res.exit_code == 0);
    const auto glcm_help = run_cli("glcm --help");
    REQUIRE(glcm_help.exit_code == 0);
    CHECK(contains(glcm_help.output, "17"));
    CHECK(contains(glcm_help.output, "32"));
}
