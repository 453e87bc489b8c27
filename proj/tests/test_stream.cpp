#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "leyes/pcr/select.hpp"
#include "leyes/stream/export.hpp"
#include "leyes/stream/stream.hpp"

using namespace leyes;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const char* name) {
    fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("fnv1a64 matches the reference test vectors") {
    CHECK(stream::fnv1a64("", 0) == 0xcbf29ce484222325ULL);
    CHECK(stream::fnv1a64("a", 1) == 0xaf63dc4c8601ec8cULL);
    CHECK(stream::fnv1a64("foobar", 6) == 0x85944171f73967e8ULL);
}

TEST_CASE("generate_sample is deterministic in the scene seed") {
    auto cfg = scenario::apply_stage(scenario::preset("chugh"), 1);
    auto a = stream::generate_sample(cfg, 12345);
    auto b = stream::generate_sample(cfg, 12345);
    CHECK(a.image.values == b.image.values);
    CHECK(a.labels.pupil_x == b.labels.pupil_x);
    CHECK(a.labels.crs.size() == b.labels.crs.size());
    auto c = stream::generate_sample(cfg, 12346);
    CHECK(a.image.values != c.image.values);
}

TEST_CASE("stream random access equals sequential iteration") {
    stream::SampleStream seq("pupil_500", 1, 777);
    stream::SampleStream rand_access("pupil_500", 1, 777);
    for (std::uint64_t i = 0; i < 5; ++i) {
        auto a = seq.next();
        auto b = rand_access.at(i);
        CHECK(a.scene_seed == b.scene_seed);
        CHECK(a.image.values == b.image.values);
    }
    CHECK(seq.next_index() == 5);
}

TEST_CASE("skip_to matches sequential position") {
    stream::SampleStream a("cr_500", 1, 42);
    stream::SampleStream b("cr_500", 1, 42);
    for (int i = 0; i < 3; ++i) a.next();
    b.skip_to(3);
    auto sa = a.next();
    auto sb = b.next();
    CHECK(sa.scene_seed == sb.scene_seed);
    CHECK(sa.image.values == sb.image.values);
}

TEST_CASE("next_batch returns n consecutive samples") {
    stream::SampleStream s("chugh", 2, 9);
    auto batch = s.next_batch(4);
    REQUIRE(batch.size() == 4);
    CHECK(s.next_index() == 4);
    stream::SampleStream t("chugh", 2, 9);
    for (int i = 0; i < 4; ++i) CHECK(t.next().scene_seed == batch[i].scene_seed);
    CHECK_THROWS_AS(s.next_batch(0), std::invalid_argument);
}

TEST_CASE("heatmaps peak at present features and vanish for dropped ones") {
    auto cfg = scenario::apply_stage(scenario::preset("chugh"), 1);
    // Probe until a sample with at least one dropped CR appears.
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        auto sample = stream::generate_sample(cfg, seed, true, 1.0);
        REQUIRE(sample.labels.heatmaps.size() == 1 + sample.labels.crs.size());
        bool any_dropped = false;
        for (std::size_t k = 0; k < sample.labels.crs.size(); ++k) {
            const auto& cr = sample.labels.crs[k];
            const auto& map = sample.labels.heatmaps[k + 1];
            auto peak = pcr::peak_of_map(map);
            if (cr.present) {
                CHECK(peak.value > 0.6);  // unit peak sampled on the pixel grid
                CHECK(std::abs(peak.x - cr.x) <= 1.0);
                CHECK(std::abs(peak.y - cr.y) <= 1.0);
            } else {
                any_dropped = true;
                CHECK(peak.value == 0.0);
            }
        }
        if (any_dropped) return;
    }
    FAIL("no sample with a dropped CR found");
}

TEST_CASE("export writes a complete dataset with a stable manifest") {
    auto dir = fresh_dir("leyes_test_export");
    stream::SampleStream s("pupil_500", 2, 2024);
    auto manifest = stream::export_dataset(s, 6, dir.string());
    CHECK(manifest.complete);
    CHECK(manifest.count == 6);
    CHECK(manifest.entries.size() == 6);
    CHECK(s.next_index() == 6);
    for (const auto& e : manifest.entries) CHECK(fs::exists(dir / e.file));
    CHECK(fs::exists(dir / "labels.jsonl"));
    CHECK(fs::exists(dir / "manifest.json"));

    auto reread = stream::read_manifest(dir.string());
    CHECK(reread.label_hash == manifest.label_hash);
    CHECK(reread.master_seed == manifest.master_seed);
    CHECK(reread.entries.size() == manifest.entries.size());
    for (std::size_t i = 0; i < reread.entries.size(); ++i) {
        CHECK(reread.entries[i].file == manifest.entries[i].file);
        CHECK(reread.entries[i].image_hash == manifest.entries[i].image_hash);
    }

    // A second export from the same seed reproduces the hashes.
    auto dir2 = fresh_dir("leyes_test_export2");
    stream::SampleStream s2("pupil_500", 2, 2024);
    auto manifest2 = stream::export_dataset(s2, 6, dir2.string());
    CHECK(manifest2.label_hash == manifest.label_hash);
    for (std::size_t i = 0; i < manifest.entries.size(); ++i)
        CHECK(manifest2.entries[i].image_hash == manifest.entries[i].image_hash);
    fs::remove_all(dir);
    fs::remove_all(dir2);
}

TEST_CASE("parallel export equals single worker") {
    auto dir1 = fresh_dir("leyes_test_export_t1");
    auto dir8 = fresh_dir("leyes_test_export_t8");
    stream::SampleStream s1("chugh", 1, 31337);
    stream::SampleStream s8("chugh", 1, 31337);
    auto m1 = stream::export_dataset(s1, 12, dir1.string(), false, 1);
    auto m8 = stream::export_dataset(s8, 12, dir8.string(), false, 8);
    CHECK(m1.label_hash == m8.label_hash);
    REQUIRE(m1.entries.size() == m8.entries.size());
    for (std::size_t i = 0; i < m1.entries.size(); ++i) {
        CHECK(m1.entries[i].file == m8.entries[i].file);
        CHECK(m1.entries[i].scene_seed == m8.entries[i].scene_seed);
        CHECK(m1.entries[i].image_hash == m8.entries[i].image_hash);
    }
    fs::remove_all(dir1);
    fs::remove_all(dir8);
}

TEST_CASE("label records carry a null pupil for CR-only scenes") {
    auto cfg = scenario::apply_stage(scenario::preset("cr_500"), 1);
    auto sample = stream::generate_sample(cfg, 5);
    std::string record = stream::label_record_json(sample, "sample_000000.png");
    CHECK(record.find("\"pupil\":null") != std::string::npos);
    CHECK(record.find("\"crs\":[") != std::string::npos);

    auto pupil_cfg = scenario::apply_stage(scenario::preset("pupil_500"), 1);
    auto pupil_sample = stream::generate_sample(pupil_cfg, 5);
    std::string pupil_record = stream::label_record_json(pupil_sample, "x.png");
    CHECK(pupil_record.find("\"pupil\":{") != std::string::npos);
    CHECK(pupil_record.find("\"alpha\"") != std::string::npos);
}

TEST_CASE("heatmap export round-trips through the map container") {
    auto dir = fresh_dir("leyes_test_export_maps");
    stream::SampleStream s("chugh", 1, 55, true);
    auto manifest = stream::export_dataset(s, 2, dir.string(), true);
    CHECK(manifest.complete);
    auto maps = pcr::read_maps((dir / "sample_000000.maps").string());
    CHECK(maps.pupil_map.width == 128);
    CHECK(maps.cr_maps.size() == 5);
    fs::remove_all(dir);
}
