#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>

#include "leyes/core/rng.hpp"
#include "leyes/pcr/select.hpp"
#include "leyes/stream/stream.hpp"

using namespace leyes;
namespace fs = std::filesystem;

namespace {

core::FloatImage flat_map(int w, int h, double value) { return core::FloatImage(w, h, value); }

core::FloatImage map_with_peak(int w, int h, int px, int py, double peak, double base = 0.0) {
    core::FloatImage m(w, h, base);
    m.at(py, px) = peak;
    return m;
}

} // namespace

TEST_CASE("decide_crop follows the detector only above the confidence threshold") {
    // Confident detector: crop centered on the estimate.
    auto [x1, y1] = pcr::decide_crop({300.0, 200.0, 0.95}, 0.90, 640, 480, 128);
    CHECK(x1 == 300 - 64);
    CHECK(y1 == 200 - 64);

    // Low confidence: crop centered on the image center.
    auto [x2, y2] = pcr::decide_crop({300.0, 200.0, 0.50}, 0.90, 640, 480, 128);
    CHECK(x2 == static_cast<int>(std::lround((640 - 1) / 2.0)) - 64);
    CHECK(y2 == static_cast<int>(std::lround((480 - 1) / 2.0)) - 64);

    // Threshold reached exactly counts as confident.
    auto [x3, y3] = pcr::decide_crop({100.0, 100.0, 0.90}, 0.90, 640, 480, 128);
    CHECK(x3 == 100 - 64);
    CHECK(y3 == 100 - 64);
}

TEST_CASE("decide_crop clamps the crop inside the image") {
    auto [x1, y1] = pcr::decide_crop({3.0, 2.0, 1.0}, 0.5, 640, 480, 128);
    CHECK(x1 == 0);
    CHECK(y1 == 0);
    auto [x2, y2] = pcr::decide_crop({639.0, 479.0, 1.0}, 0.5, 640, 480, 128);
    CHECK(x2 == 640 - 128);
    CHECK(y2 == 480 - 128);
    // A crop the size of the image pins to the origin regardless of the estimate.
    auto [x3, y3] = pcr::decide_crop({10.0, 90.0, 1.0}, 0.5, 128, 128, 128);
    CHECK(x3 == 0);
    CHECK(y3 == 0);
}

TEST_CASE("decide_crop rejects crops larger than the image") {
    CHECK_THROWS_AS(pcr::decide_crop({0, 0, 1.0}, 0.5, 100, 100, 128), std::invalid_argument);
    CHECK_THROWS_AS(pcr::decide_crop({0, 0, 1.0}, 0.5, 640, 100, 128), std::invalid_argument);
}

TEST_CASE("peak_of_map finds the unique maximum") {
    auto m = map_with_peak(16, 12, 5, 7, 3.25, 0.1);
    auto p = pcr::peak_of_map(m);
    CHECK(p.value == 3.25);
    CHECK(p.x == 5);
    CHECK(p.y == 7);
}

TEST_CASE("peak_of_map breaks ties toward the smaller row-major index") {
    core::FloatImage m(8, 8, 0.0);
    m.at(6, 3) = 2.0;
    m.at(2, 5) = 2.0;  // same value, earlier row-major index
    auto p = pcr::peak_of_map(m);
    CHECK(p.x == 5);
    CHECK(p.y == 2);

    auto flat = flat_map(4, 4, 1.5);
    auto q = pcr::peak_of_map(flat);
    CHECK(q.x == 0);
    CHECK(q.y == 0);
    CHECK(q.value == 1.5);
}

TEST_CASE("select_best_two_crs picks the two highest peaks") {
    pcr::FeatureMapSet maps;
    maps.pupil_map = map_with_peak(32, 32, 16, 16, 2.0);
    const double peaks[] = {5.2, 0.8, 3.1, 7.0, 2.2};
    for (int k = 0; k < 5; ++k) maps.cr_maps.push_back(map_with_peak(32, 32, 2 + 5 * k, 9, peaks[k]));

    auto r = pcr::select_best_two_crs(maps);
    REQUIRE(r.valid);
    CHECK(r.first.index == 3);
    CHECK(r.first.peak == 7.0);
    CHECK(r.first.x == 2 + 5 * 3);
    CHECK(r.first.y == 9);
    CHECK(r.second.index == 0);
    CHECK(r.second.peak == 5.2);
    CHECK(r.pupil_x == 16);
    CHECK(r.pupil_y == 16);
}

TEST_CASE("select_best_two_crs needs two peaks at or above one") {
    pcr::FeatureMapSet maps;
    maps.pupil_map = flat_map(16, 16, 0.0);
    maps.cr_maps.push_back(map_with_peak(16, 16, 4, 4, 0.9));
    maps.cr_maps.push_back(map_with_peak(16, 16, 8, 8, 0.99));
    maps.cr_maps.push_back(map_with_peak(16, 16, 12, 12, 5.0));
    auto r = pcr::select_best_two_crs(maps);
    CHECK_FALSE(r.valid);

    // Exactly 1.0 counts: two maps at 1.0 are valid and tie toward lower index.
    maps.cr_maps[0] = map_with_peak(16, 16, 4, 4, 1.0);
    maps.cr_maps[1] = map_with_peak(16, 16, 8, 8, 1.0);
    maps.cr_maps[2] = flat_map(16, 16, 0.0);
    auto r2 = pcr::select_best_two_crs(maps);
    REQUIRE(r2.valid);
    CHECK(r2.first.index == 0);
    CHECK(r2.second.index == 1);
}

TEST_CASE("select_best_two_crs requires at least two CR maps") {
    pcr::FeatureMapSet maps;
    maps.pupil_map = flat_map(8, 8, 0.0);
    maps.cr_maps.push_back(map_with_peak(8, 8, 1, 1, 2.0));
    CHECK_THROWS_AS(pcr::select_best_two_crs(maps), std::invalid_argument);
}

TEST_CASE("selection respects the crop origin translation") {
    pcr::FeatureMapSet maps;
    maps.crop_x = 40;
    maps.crop_y = 25;
    maps.pupil_map = map_with_peak(32, 32, 10, 11, 2.0);
    maps.cr_maps.push_back(map_with_peak(32, 32, 3, 4, 2.0));
    maps.cr_maps.push_back(map_with_peak(32, 32, 20, 21, 1.5));
    auto r = pcr::select_best_two_crs(maps);
    REQUIRE(r.valid);
    CHECK(r.pupil_x == 50);
    CHECK(r.pupil_y == 36);
    CHECK(r.first.x == 43);
    CHECK(r.first.y == 29);
    CHECK(r.second.x == 60);
    CHECK(r.second.y == 46);
}

TEST_CASE("selection order is invariant to a positive scaling of all maps") {
    core::Rng rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        pcr::FeatureMapSet maps;
        maps.pupil_map = flat_map(16, 16, 0.0);
        int k = static_cast<int>(rng.uniform_int(2, 6));
        for (int i = 0; i < k; ++i) {
            int px = static_cast<int>(rng.uniform_int(0, 15));
            int py = static_cast<int>(rng.uniform_int(0, 15));
            maps.cr_maps.push_back(map_with_peak(16, 16, px, py, rng.uniform(1.0, 10.0)));
        }
        auto base = pcr::select_best_two_crs(maps);
        REQUIRE(base.valid);

        double scale = rng.uniform(1.0, 4.0);
        pcr::FeatureMapSet scaled = maps;
        for (auto& m : scaled.cr_maps)
            for (auto& v : m.values) v *= scale;
        auto r = pcr::select_best_two_crs(scaled);
        REQUIRE(r.valid);
        CHECK(r.first.index == base.first.index);
        CHECK(r.second.index == base.second.index);
        CHECK(r.first.x == base.first.x);
        CHECK(r.second.y == base.second.y);
    }
}

TEST_CASE("oracle maps select the labeled CRs") {
    auto cfg = scenario::apply_stage(scenario::preset("chugh"), 1);
    auto sample = stream::generate_sample(cfg, 321);
    auto maps = pcr::synthesize_oracle_maps(sample.labels, cfg.width, cfg.height, 6.0);
    REQUIRE(maps.cr_maps.size() == sample.labels.crs.size());

    int present = 0;
    for (const auto& cr : sample.labels.crs) present += cr.present ? 1 : 0;
    auto r = pcr::select_best_two_crs(maps);
    if (present >= 2) {
        REQUIRE(r.valid);
        const auto& a = sample.labels.crs[r.first.index];
        const auto& b = sample.labels.crs[r.second.index];
        CHECK(a.present);
        CHECK(b.present);
        CHECK(std::abs(r.first.x - a.x) <= 1.0);
        CHECK(std::abs(r.first.y - a.y) <= 1.0);
        CHECK(std::abs(r.second.x - b.x) <= 1.0);
        CHECK(std::abs(r.second.y - b.y) <= 1.0);
        CHECK(std::abs(r.pupil_x - sample.labels.pupil_x) <= 1.0);
    } else {
        CHECK_FALSE(r.valid);
    }
}

TEST_CASE("oracle maps with fewer than two present CRs are invalid") {
    stream::LabelSet labels;
    labels.has_pupil = true;
    labels.pupil_x = 64;
    labels.pupil_y = 64;
    labels.crs = {{0, 20, 20, true}, {1, 40, 40, false}, {2, 60, 60, false},
                  {3, 80, 80, false}, {4, 100, 100, false}};
    auto maps = pcr::synthesize_oracle_maps(labels, 128, 128, 6.0);
    CHECK(pcr::peak_of_map(maps.cr_maps[1]).value == 0.0);
    auto r = pcr::select_best_two_crs(maps);
    CHECK_FALSE(r.valid);
}

TEST_CASE("oracle map peaks land within one pixel of the labels") {
    stream::LabelSet labels;
    labels.has_pupil = true;
    labels.pupil_x = 30.4;
    labels.pupil_y = 71.6;
    labels.crs = {{0, 17.2, 90.8, true}, {1, 100.5, 12.5, true}};
    auto maps = pcr::synthesize_oracle_maps(labels, 128, 128, 3.0);
    auto pp = pcr::peak_of_map(maps.pupil_map);
    CHECK(std::abs(pp.x - labels.pupil_x) <= 1.0);
    CHECK(std::abs(pp.y - labels.pupil_y) <= 1.0);
    for (std::size_t k = 0; k < labels.crs.size(); ++k) {
        auto p = pcr::peak_of_map(maps.cr_maps[k]);
        CHECK(std::abs(p.x - labels.crs[k].x) <= 1.0);
        CHECK(std::abs(p.y - labels.crs[k].y) <= 1.0);
        CHECK(p.value == doctest::Approx(3.0).epsilon(0.2));
    }
    CHECK_THROWS_AS(pcr::synthesize_oracle_maps(labels, 128, 128, 0.0), std::invalid_argument);
}

TEST_CASE("map container round-trips bitwise at float precision") {
    auto path = (fs::temp_directory_path() / "leyes_test_pcr.maps").string();
    pcr::FeatureMapSet maps;
    core::Rng rng(7);
    maps.pupil_map = core::FloatImage(24, 18);
    for (auto& v : maps.pupil_map.values) v = static_cast<float>(rng.uniform(-5.0, 5.0));
    for (int k = 0; k < 3; ++k) {
        core::FloatImage m(24, 18);
        for (auto& v : m.values) v = static_cast<float>(rng.uniform(-5.0, 5.0));
        maps.cr_maps.push_back(std::move(m));
    }
    pcr::write_maps(maps, path);

    auto reread = pcr::read_maps(path);
    CHECK(reread.pupil_map.width == 24);
    CHECK(reread.pupil_map.height == 18);
    REQUIRE(reread.cr_maps.size() == 3);
    CHECK(reread.pupil_map.values == maps.pupil_map.values);
    for (int k = 0; k < 3; ++k) CHECK(reread.cr_maps[k].values == maps.cr_maps[k].values);

    // File size is the header line plus (k+1) float32 planes.
    std::string header = "LEYESMAPS 1 24 18 4\n";
    auto expected = header.size() + 4ull * 24 * 18 * sizeof(float);
    CHECK(fs::file_size(path) == expected);
    fs::remove(path);
}

TEST_CASE("truncated map files raise an error") {
    auto path = (fs::temp_directory_path() / "leyes_test_pcr_short.maps").string();
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out << "LEYESMAPS 1 8 8 2\n";
        float junk[10] = {};
        out.write(reinterpret_cast<const char*>(junk), sizeof(junk));
    }
    CHECK_THROWS_AS(pcr::read_maps(path), std::runtime_error);
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out << "NOTMAPS 1 8 8 2\n";
    }
    CHECK_THROWS_AS(pcr::read_maps(path), std::runtime_error);
    fs::remove(path);
}
