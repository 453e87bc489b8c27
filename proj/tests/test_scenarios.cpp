#include <doctest.h>

#include <cmath>
#include <numbers>

#include "leyes/render/gaussian.hpp"
#include "leyes/scenario/config.hpp"
#include "leyes/scenario/sample.hpp"
#include "leyes/scenario/scene.hpp"

using namespace leyes;
using scenario::Distribution;
using scenario::Point;

TEST_CASE("distribution validation rejects malformed parameters") {
    CHECK_THROWS_AS(Distribution::uniform(5.0, 2.0).validate(), std::invalid_argument);
    CHECK_THROWS_AS(Distribution::log_uniform(-1.0, 2.0).validate(), std::invalid_argument);
    CHECK_THROWS_AS(Distribution::normal(0.0, -1.0).validate(), std::invalid_argument);
    CHECK_THROWS_AS(Distribution::weibull(25.0, 0.0, 18.0).validate(), std::invalid_argument);
    CHECK_NOTHROW(Distribution::uniform(2.0, 5.0).validate());
}

TEST_CASE("distribution means") {
    CHECK(Distribution::constant(7.0).mean() == 7.0);
    CHECK(Distribution::uniform(2.0, 4.0).mean() == doctest::Approx(3.0));
    CHECK(Distribution::exponential(10.0, 1.0).mean() == doctest::Approx(11.0));
    CHECK(Distribution::weibull(25.0, 2.0, 18.0).mean() ==
          doctest::Approx(18.0 + 25.0 * std::tgamma(1.5)).epsilon(1e-12));
}

TEST_CASE("preset ids are exactly the seven scenarios") {
    CHECK(scenario::scenario_ids().size() == 7);
    for (const auto& id : scenario::scenario_ids()) {
        CHECK(scenario::is_known_scenario(id));
        CHECK(scenario::preset(id).id == id);
    }
    CHECK_FALSE(scenario::is_known_scenario("bogus"));
    CHECK_THROWS_AS(scenario::preset("bogus"), std::invalid_argument);
}

TEST_CASE("canvas sizes: CNN presets render 180, the rest 128") {
    for (const char* id : {"cr_500", "cr_1000", "pupil_500", "pupil_1000"})
        CHECK(scenario::preset(id).width == 180);
    for (const char* id : {"eds2019", "chugh", "eds2020"})
        CHECK(scenario::preset(id).width == 128);
}

TEST_CASE("stage handling") {
    auto chugh = scenario::preset("chugh");
    auto s1 = scenario::apply_stage(chugh, 1);
    CHECK(s1.cr_dropout == doctest::Approx(0.16));
    CHECK(s1.spurious_max == 5);
    CHECK(s1.rotation_max_deg == doctest::Approx(45.0));

    auto s2 = scenario::apply_stage(chugh, 2);
    CHECK(s2.cr_dropout == doctest::Approx(0.10));
    CHECK(s2.spurious_max == 3);
    CHECK(s2.rotation_max_deg == doctest::Approx(35.0));

    auto pupil2 = scenario::apply_stage(scenario::preset("pupil_500"), 2);
    CHECK(pupil2.cr_count_min == 1);
    CHECK(pupil2.cr_count_max == 1);

    CHECK_THROWS_AS(scenario::apply_stage(chugh, 3), std::invalid_argument);
    CHECK_THROWS_AS(scenario::apply_stage(chugh, 0), std::invalid_argument);
}

TEST_CASE("config json round trip is the identity") {
    for (const auto& id : scenario::scenario_ids()) {
        auto cfg = scenario::preset(id);
        std::string once = scenario::config_to_json(cfg);
        std::string twice = scenario::config_to_json(scenario::config_from_json(once));
        CHECK(once == twice);
    }
}

TEST_CASE("house vertices: five points, topmost first, clockwise") {
    core::Rng rng(501);
    for (int i = 0; i < 100; ++i) {
        double w = rng.uniform(12.8, 57.6);
        double h = w * rng.uniform(0.5, 0.6);
        double roof = w * rng.uniform(0.2, 0.5);
        double rot = rng.uniform(-45.0, 45.0);
        Point anchor{rng.uniform(40.0, 90.0), rng.uniform(40.0, 90.0)};
        auto v = scenario::make_house_vertices(w, h, roof, rot, anchor);
        REQUIRE(v.size() == 5);
        for (std::size_t k = 1; k < v.size(); ++k) CHECK(v[0].y <= v[k].y + 1e-12);

        // Clockwise on screen (y down): angles around the centroid increase
        // with exactly one wrap.
        Point c{0.0, 0.0};
        for (const auto& p : v) {
            c.x += p.x / 5.0;
            c.y += p.y / 5.0;
        }
        int wraps = 0;
        for (std::size_t k = 0; k < v.size(); ++k) {
            const auto& a = v[k];
            const auto& b = v[(k + 1) % v.size()];
            double ta = std::atan2(a.y - c.y, a.x - c.x);
            double tb = std::atan2(b.y - c.y, b.x - c.x);
            if (tb <= ta) ++wraps;
        }
        CHECK(wraps == 1);
    }
}

TEST_CASE("house vertices at zero rotation have the apex over the roof middle") {
    auto v = scenario::make_house_vertices(40.0, 22.0, 12.0, 0.0, {64.0, 64.0});
    REQUIRE(v.size() == 5);
    // Apex sits centered above the two rectangle top corners.
    CHECK(v[0].x == doctest::Approx(0.5 * (v[1].x + v[4].x)));
    CHECK(v[1].y == doctest::Approx(v[4].y));
    CHECK(v[0].y == doctest::Approx(v[1].y - 12.0));
    CHECK(std::abs(v[1].x - v[4].x) == doctest::Approx(40.0));
    CHECK(v[2].y - v[1].y == doctest::Approx(22.0));
}

TEST_CASE("ring vertices: eight points starting bottom-right, clockwise") {
    auto v = scenario::make_ring_vertices(30.0, 8, 0.0, {64.0, 64.0});
    REQUIRE(v.size() == 8);
    // First vertex at 45 degrees in screen coordinates: down and right.
    CHECK(v[0].x == doctest::Approx(64.0 + 30.0 * std::cos(std::numbers::pi / 4)));
    CHECK(v[0].y == doctest::Approx(64.0 + 30.0 * std::sin(std::numbers::pi / 4)));
    for (const auto& p : v)
        CHECK(std::hypot(p.x - 64.0, p.y - 64.0) == doctest::Approx(30.0).epsilon(1e-9));
    // Clockwise on screen: angle decreases from vertex 0 in y-up terms, i.e.
    // increases in screen atan2 with one wrap.
    int wraps = 0;
    for (std::size_t k = 0; k < v.size(); ++k) {
        double ta = std::atan2(v[k].y - 64.0, v[k].x - 64.0);
        double tb = std::atan2(v[(k + 1) % 8].y - 64.0, v[(k + 1) % 8].x - 64.0);
        if (tb <= ta) ++wraps;
    }
    CHECK(wraps == 1);
}

TEST_CASE("periodic spline reproduces knots and constants") {
    std::vector<double> constant(17, 3.5);
    auto smooth = scenario::periodic_spline_resample(constant, 5);
    REQUIRE(smooth.size() == constant.size() * 5);
    for (double v : smooth) CHECK(v == doctest::Approx(3.5).epsilon(1e-9));

    std::vector<double> knots = {1.0, 2.0, 1.5, 3.0, 2.5, 1.2, 2.8};
    auto up = scenario::periodic_spline_resample(knots, 5);
    REQUIRE(up.size() == knots.size() * 5);
    for (std::size_t i = 0; i < knots.size(); ++i)
        CHECK(up[i * 5] == doctest::Approx(knots[i]).epsilon(1e-9));
}

TEST_CASE("zero-jitter collarette is an exact circle") {
    auto cfg = scenario::preset("eds2019");
    cfg.collarette_jitter_ratio = Distribution::constant(0.0);
    scenario::IrisSpec iris;
    iris.center = {64.0, 64.0};
    iris.alpha = 35.0;
    iris.beta = 40.0;
    core::Rng rng(502);
    auto collarette = scenario::build_collarette(iris, cfg, rng);
    REQUIRE(!collarette.polygon.empty());
    CHECK(collarette.polygon.size() == static_cast<std::size_t>(collarette.n_vertices) * 5);
    for (const auto& p : collarette.polygon)
        CHECK(std::hypot(p.x - collarette.center.x, p.y - collarette.center.y) ==
              doctest::Approx(collarette.mean_radius).epsilon(1e-9));
}

TEST_CASE("place_nonoverlapping enforces the pairwise separation rule") {
    core::Rng rng(503);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<render::GaussianFeature> crs(4);
        for (auto& f : crs) {
            f.alpha = rng.uniform(4.0, 12.0);
            f.beta = f.alpha * rng.uniform(1.0, 1.1);
        }
        scenario::place_nonoverlapping(
            crs, 1.25, [](core::Rng& r) { return Point{r.uniform(0.0, 180.0), r.uniform(0.0, 180.0)}; },
            rng);
        for (std::size_t i = 0; i < crs.size(); ++i)
            for (std::size_t j = i + 1; j < crs.size(); ++j) {
                double d = std::hypot(crs[i].x - crs[j].x, crs[i].y - crs[j].y);
                CHECK(d >= 1.25 * (crs[i].beta + crs[j].beta) - 1e-9);
            }
    }
}

TEST_CASE("impossible placement raises PlacementExhausted") {
    core::Rng rng(504);
    std::vector<render::GaussianFeature> crs(2);
    for (auto& f : crs) f.alpha = f.beta = 100.0;  // cannot be 250 px apart in a 128 canvas
    CHECK_THROWS_AS(
        scenario::place_nonoverlapping(
            crs, 1.25,
            [](core::Rng& r) { return Point{r.uniform(0.0, 128.0), r.uniform(0.0, 128.0)}; }, rng),
        scenario::PlacementExhausted);
}

TEST_CASE("spurious positions never land on the pupil plateau") {
    core::Rng rng(505);
    render::GaussianFeature pupil;
    pupil.x = 64.0;
    pupil.y = 64.0;
    pupil.alpha = 15.0;
    pupil.beta = 18.0;
    pupil.theta = 0.7;
    pupil.amplitude = 1000.0;
    for (int trial = 0; trial < 20; ++trial) {
        auto pts = scenario::sample_spurious_positions(pupil, 5, 128, 128, rng);
        REQUIRE(pts.size() == 5);
        for (const auto& p : pts) CHECK(render::eval_gaussian(pupil, p.x, p.y) < 1.0);
    }
}

TEST_CASE("split background puts dark on the positive side of the line") {
    scenario::Scene scene;
    scene.width = scene.height = 32;
    scenario::SplitBackground split;
    split.line.point = {16.0, 16.0};
    split.line.normal = {1.0, 0.0};
    split.dark_luminance = 5.0;
    split.grey_luminance = 128.0;
    scene.background = split;
    core::FloatImage bg = scenario::render_background(scene);
    CHECK(bg.at(10, 30) == doctest::Approx(5.0));    // x > 16: positive side
    CHECK(bg.at(10, 2) == doctest::Approx(128.0));   // x < 16
}

TEST_CASE("gradient background interpolates between the two luminances") {
    scenario::Scene scene;
    scene.width = scene.height = 64;
    scenario::GradientBackground grad;
    grad.lum_a = 63.0;
    grad.lum_b = 178.0;
    grad.axis = {1.0, 0.0};
    scene.background = grad;
    core::FloatImage bg = scenario::render_background(scene);
    CHECK(bg.at(10, 0) == doctest::Approx(63.0).epsilon(1e-9));
    CHECK(bg.at(50, 63) == doctest::Approx(178.0).epsilon(1e-9));
    double lo = 1e9, hi = -1e9;
    for (double v : bg.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    CHECK(lo >= 63.0 - 1e-9);
    CHECK(hi <= 178.0 + 1e-9);
}

TEST_CASE("sampled scenes have coherent structure per preset") {
    core::Rng rng(506);
    for (const auto& id : scenario::scenario_ids()) {
        auto cfg = scenario::apply_stage(scenario::preset(id), 1);
        for (int i = 0; i < 20; ++i) {
            auto scene = scenario::sample_scene(cfg, rng);
            CHECK(scene.width == cfg.width);
            CHECK(scene.height == cfg.height);
            if (cfg.family == scenario::SceneFamily::CrOnLine) {
                CHECK_FALSE(scene.truth.has_pupil);
                CHECK(scene.truth.crs.size() == 1);
            } else {
                CHECK(scene.truth.has_pupil);
                CHECK(scene.truth.crs.size() >= static_cast<std::size_t>(cfg.cr_count_min));
                CHECK(scene.truth.crs.size() <= static_cast<std::size_t>(cfg.cr_count_max));
                CHECK(scene.truth.pupil_beta >= scene.truth.pupil_alpha);
            }
            for (const auto& f : scene.dark_features) {
                CHECK(f.theta >= 0.0);
                CHECK(f.theta < std::numbers::pi);
            }
            int spurious = 0;
            for (const auto& b : scene.bright_features)
                if (b.role == scenario::BrightRole::Spurious) ++spurious;
            if (cfg.family == scenario::SceneFamily::PolygonRig) {
                CHECK(spurious >= cfg.spurious_min);
                CHECK(spurious <= cfg.spurious_max);
            } else {
                CHECK(spurious == 0);
            }
        }
    }
}

TEST_CASE("stage 2 pins the feature center near the image center") {
    core::Rng rng(507);
    for (const char* id : {"cr_500", "pupil_500"}) {
        auto cfg = scenario::apply_stage(scenario::preset(id), 2);
        double cx = (cfg.width - 1) / 2.0, cy = (cfg.height - 1) / 2.0;
        for (int i = 0; i < 50; ++i) {
            auto scene = scenario::sample_scene(cfg, rng);
            double x, y;
            if (scene.truth.has_pupil) {
                x = scene.truth.pupil_x;
                y = scene.truth.pupil_y;
                CHECK(scene.truth.crs.size() == 1);  // stage 2: single CR
            } else {
                x = scene.truth.crs[0].x;
                y = scene.truth.crs[0].y;
            }
            CHECK(std::abs(x - cx) <= 0.75 + 1e-9);
            CHECK(std::abs(y - cy) <= 0.75 + 1e-9);
        }
    }
}

TEST_CASE("polygon scenes honor dropout bookkeeping") {
    core::Rng rng(508);
    auto cfg = scenario::apply_stage(scenario::preset("chugh"), 1);
    int dropped = 0, total = 0;
    for (int i = 0; i < 300; ++i) {
        auto scene = scenario::sample_scene(cfg, rng);
        REQUIRE(scene.truth.crs.size() == 5);
        for (std::size_t k = 0; k < scene.truth.crs.size(); ++k) {
            CHECK(scene.truth.crs[k].index == static_cast<int>(k));
            ++total;
            if (!scene.truth.crs[k].present) ++dropped;
        }
        // Dropped CRs are not rendered.
        for (const auto& b : scene.bright_features)
            if (b.role == scenario::BrightRole::Cr)
                CHECK(b.present == scene.truth.crs[b.index].present);
    }
    double rate = double(dropped) / total;
    CHECK(rate > 0.10);
    CHECK(rate < 0.22);
}

TEST_CASE("pupil plateau mask matches the analytic ellipse test") {
    core::Rng rng(509);
    auto cfg = scenario::apply_stage(scenario::preset("pupil_500"), 1);
    auto scene = scenario::sample_scene(cfg, rng);
    core::BinaryImage mask = scenario::pupil_plateau_mask(scene);
    REQUIRE(mask.width == scene.width);
    const auto& truth = scene.truth;
    double ct = std::cos(truth.pupil_theta), st = std::sin(truth.pupil_theta);
    for (int r = 0; r < mask.height; ++r)
        for (int c = 0; c < mask.width; ++c) {
            double dx = c - truth.pupil_x, dy = r - truth.pupil_y;
            double u = (dx * ct + dy * st) / truth.pupil_alpha;
            double v = (-dx * st + dy * ct) / truth.pupil_beta;
            bool inside = u * u + v * v <= 1.0;
            CHECK(static_cast<bool>(mask.at(r, c)) == inside);
        }
}
