#include "leyes/scenario/sample.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace leyes::scenario {

namespace {

constexpr double kPi = std::numbers::pi;

Point rotate_about(Point p, Point c, double angle_rad) {
    double ct = std::cos(angle_rad), st = std::sin(angle_rad);
    double dx = p.x - c.x, dy = p.y - c.y;
    return {c.x + dx * ct - dy * st, c.y + dx * st + dy * ct};
}

/// Signed rotation magnitude from +-[0, max] degrees.
double sample_rotation(double max_deg, core::Rng& rng) {
    double mag = rng.uniform(0.0, max_deg);
    return rng.bernoulli(0.5) ? mag : -mag;
}

render::GaussianFeature sample_feature(const FeatureRanges& ranges, core::Rng& rng,
                                       render::Polarity polarity) {
    render::GaussianFeature f;
    f.alpha = ranges.alpha.sample(rng);
    f.beta = f.alpha * ranges.beta_ratio.sample(rng);
    f.theta = rng.uniform(0.0, kPi);
    f.amplitude = ranges.amplitude.sample(rng);
    f.luminance = ranges.luminance.sample(rng);
    f.polarity = polarity;
    return f;
}

/// Center uniform with the given margin from every border; when the margin
/// does not fit, the canvas center is used.
Point sample_center_with_margin(int width, int height, double margin, core::Rng& rng) {
    double x_lo = margin, x_hi = width - 1 - margin;
    double y_lo = margin, y_hi = height - 1 - margin;
    if (x_lo > x_hi || y_lo > y_hi) return {(width - 1) / 2.0, (height - 1) / 2.0};
    return {rng.uniform(x_lo, x_hi), rng.uniform(y_lo, y_hi)};
}

Point stage2_center(int width, int height, double span, core::Rng& rng) {
    double cx = (width - 1) / 2.0, cy = (height - 1) / 2.0;
    return {cx + rng.uniform(-span / 2.0, span / 2.0), cy + rng.uniform(-span / 2.0, span / 2.0)};
}

} // namespace

std::vector<Point> make_house_vertices(double base_width, double rect_height, double roof_height,
                                       double rotation_deg, Point anchor) {
    double hw = base_width / 2.0, hh = rect_height / 2.0;
    // Top-left origin, y grows downward: "above" is -y. Clockwise on screen
    // starting at the apex.
    std::vector<Point> v = {
        {anchor.x, anchor.y - hh - roof_height},  // apex
        {anchor.x + hw, anchor.y - hh},           // top-right
        {anchor.x + hw, anchor.y + hh},           // bottom-right
        {anchor.x - hw, anchor.y + hh},           // bottom-left
        {anchor.x - hw, anchor.y - hh},           // top-left
    };
    double rad = rotation_deg * kPi / 180.0;
    for (Point& p : v) p = rotate_about(p, anchor, rad);
    // Relabel so vertex 0 is the topmost after rotation; the cyclic rotation
    // keeps the clockwise order.
    std::size_t top = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i].y < v[top].y) top = i;
    std::rotate(v.begin(), v.begin() + top, v.end());
    return v;
}

std::vector<Point> make_ring_vertices(double radius, int n, double rotation_deg, Point anchor) {
    std::vector<Point> v;
    v.reserve(n);
    // Angle measured from +x toward +y (down); increasing angle is clockwise
    // on screen. First vertex points bottom-right.
    double start = kPi / 4.0 + rotation_deg * kPi / 180.0;
    for (int k = 0; k < n; ++k) {
        double phi = start + 2.0 * kPi * k / n;
        v.push_back({anchor.x + radius * std::cos(phi), anchor.y + radius * std::sin(phi)});
    }
    return v;
}

PolygonLayout sample_house_layout(const ScenarioConfig& cfg, Point anchor, core::Rng& rng) {
    PolygonLayout layout;
    layout.shape = LayoutShape::House;
    layout.anchor = anchor;
    layout.crop_side = cfg.crop_side;
    double w = cfg.house_width.sample(rng);
    double h = w * cfg.house_height_ratio.sample(rng);
    double roof = w * cfg.house_roof_ratio.sample(rng);
    layout.rotation_deg = sample_rotation(cfg.rotation_max_deg, rng);
    layout.vertices = make_house_vertices(w, h, roof, layout.rotation_deg, anchor);
    return layout;
}

PolygonLayout sample_ring_layout(const ScenarioConfig& cfg, Point anchor, core::Rng& rng) {
    PolygonLayout layout;
    layout.shape = LayoutShape::Ring;
    layout.anchor = anchor;
    layout.crop_side = cfg.crop_side;
    double radius = cfg.ring_radius.sample(rng);
    layout.rotation_deg = sample_rotation(cfg.rotation_max_deg, rng);
    layout.vertices = make_ring_vertices(radius, 8, layout.rotation_deg, anchor);
    return layout;
}

void place_nonoverlapping(std::vector<render::GaussianFeature>& features, double factor,
                          const std::function<Point(core::Rng&)>& sample_position, core::Rng& rng,
                          int max_attempts) {
    int attempts = 0;
    bool clean = false;
    while (!clean) {
        clean = true;
        for (std::size_t i = 0; i < features.size() && clean; ++i) {
            for (std::size_t j = i + 1; j < features.size() && clean; ++j) {
                double dist = std::hypot(features[i].x - features[j].x,
                                         features[i].y - features[j].y);
                if (dist < factor * (features[i].beta + features[j].beta)) {
                    if (++attempts > max_attempts) throw PlacementExhausted();
                    Point p = sample_position(rng);
                    features[j].x = p.x;
                    features[j].y = p.y;
                    clean = false;
                }
            }
        }
    }
}

std::vector<Point> sample_spurious_positions(const render::GaussianFeature& pupil, int count,
                                             int width, int height, core::Rng& rng) {
    std::vector<Point> out;
    out.reserve(count);
    while (static_cast<int>(out.size()) < count) {
        Point p{rng.uniform(0.0, width - 1.0), rng.uniform(0.0, height - 1.0)};
        double g = std::clamp(render::eval_gaussian(pupil, p.x, p.y), 0.0, 1.0);
        if (rng.uniform() < 1.0 - g) out.push_back(p);
    }
    return out;
}

std::vector<double> periodic_spline_resample(const std::vector<double>& values, int upsample) {
    const int n = static_cast<int>(values.size());
    if (n < 3 || upsample < 1) throw std::invalid_argument("periodic_spline_resample: bad input");

    // Second derivatives m solve the cyclic system m[i-1] + 4 m[i] + m[i+1] =
    // 6 (r[i-1] - 2 r[i] + r[i+1]) for unit knot spacing. Sherman-Morrison
    // reduces it to two tridiagonal solves.
    std::vector<double> rhs(n);
    for (int i = 0; i < n; ++i) {
        double prev = values[(i + n - 1) % n], next = values[(i + 1) % n];
        rhs[i] = 6.0 * (prev - 2.0 * values[i] + next);
    }
    auto solve_tridiag = [n](std::vector<double> d, std::vector<double> b) {
        // Thomas algorithm with unit off-diagonals.
        std::vector<double> c(n, 1.0);
        for (int i = 1; i < n; ++i) {
            double w = 1.0 / d[i - 1];
            d[i] -= w * c[i - 1];
            b[i] -= w * b[i - 1];
        }
        std::vector<double> x(n);
        x[n - 1] = b[n - 1] / d[n - 1];
        for (int i = n - 2; i >= 0; --i) x[i] = (b[i] - c[i] * x[i + 1]) / d[i];
        return x;
    };
    const double gamma = -4.0;
    std::vector<double> diag(n, 4.0);
    diag[0] -= gamma;
    diag[n - 1] -= 1.0 / gamma;
    std::vector<double> u(n, 0.0);
    u[0] = gamma;
    u[n - 1] = 1.0;
    std::vector<double> y = solve_tridiag(diag, rhs);
    std::vector<double> z = solve_tridiag(diag, u);
    double factor = (y[0] + y[n - 1] / gamma) / (1.0 + z[0] + z[n - 1] / gamma);
    std::vector<double> m(n);
    for (int i = 0; i < n; ++i) m[i] = y[i] - factor * z[i];

    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n) * upsample);
    for (int i = 0; i < n; ++i) {
        int next = (i + 1) % n;
        for (int k = 0; k < upsample; ++k) {
            double s = static_cast<double>(k) / upsample;
            double a = 1.0 - s;
            out.push_back(m[i] * a * a * a / 6.0 + m[next] * s * s * s / 6.0 +
                          (values[i] - m[i] / 6.0) * a + (values[next] - m[next] / 6.0) * s);
        }
    }
    return out;
}

CollaretteSpec build_collarette(const IrisSpec& iris, const ScenarioConfig& cfg, core::Rng& rng) {
    CollaretteSpec col;
    col.n_vertices = rng.uniform_int(cfg.collarette_vertices_min, cfg.collarette_vertices_max);
    col.center = {iris.center.x + rng.uniform(-0.05, 0.05) * iris.beta,
                  iris.center.y + rng.uniform(-0.05, 0.05) * iris.beta};
    col.mean_radius = cfg.collarette_radius_ratio.sample(rng) * iris.beta;
    col.jitter_fraction = cfg.collarette_jitter_ratio.sample(rng);
    col.luminance = cfg.collarette_luminance_ratio.sample(rng) * iris.luminance;
    col.edge_width = cfg.collarette_edge_width.sample(rng);

    double start_angle = rng.uniform(0.0, 2.0 * kPi);
    std::vector<double> radii(col.n_vertices);
    for (double& r : radii)
        r = col.mean_radius * (1.0 + rng.uniform(-col.jitter_fraction, col.jitter_fraction));
    std::vector<double> smooth = periodic_spline_resample(radii, 5);
    col.polygon.reserve(smooth.size());
    for (std::size_t k = 0; k < smooth.size(); ++k) {
        double phi = start_angle + 2.0 * kPi * k / smooth.size();
        col.polygon.push_back({col.center.x + smooth[k] * std::cos(phi),
                               col.center.y + smooth[k] * std::sin(phi)});
    }
    return col;
}

Scene sample_cr_scene(const ScenarioConfig& cfg, core::Rng& rng) {
    Scene scene;
    scene.width = cfg.width;
    scene.height = cfg.height;

    render::GaussianFeature cr = sample_feature(cfg.pupil, rng, render::Polarity::Bright);
    cr.beta = cr.alpha;  // circular
    cr.theta = 0.0;
    Point c = (cfg.stage == 2 && cfg.stage2.center_span)
                  ? stage2_center(cfg.width, cfg.height, *cfg.stage2.center_span, rng)
                  : sample_center_with_margin(cfg.width, cfg.height, cr.alpha, rng);
    cr.x = c.x;
    cr.y = c.y;

    SplitBackground bg;
    double omega = rng.uniform(0.0, 2.0 * kPi);
    Point normal{std::cos(omega), std::sin(omega)};
    double dist = cfg.line_distance_factor.sample(rng) * cr.alpha;
    bg.line.point = {cr.x + dist * normal.x, cr.y + dist * normal.y};
    // Which side holds the dark segment is random; the line itself always
    // passes close to the CR.
    if (rng.bernoulli(0.5)) {
        normal.x = -normal.x;
        normal.y = -normal.y;
    }
    bg.line.normal = normal;
    bg.dark_luminance = cfg.line_dark_luminance.sample(rng);
    bg.grey_luminance = cfg.line_grey_luminance.sample(rng);
    scene.background = bg;

    scene.bright_features.push_back({cr, BrightRole::Cr, 0, true});
    scene.noise_sigma = cfg.noise_sigma.sample(rng);
    scene.truth.crs.push_back({0, cr.x, cr.y, true});
    return scene;
}

namespace {

/// Shared CR placement for the presets with randomly positioned CRs.
void add_random_crs(Scene& scene, const ScenarioConfig& cfg, core::Rng& rng) {
    int count = rng.uniform_int(cfg.cr_count_min, cfg.cr_count_max);
    std::vector<render::GaussianFeature> crs;
    crs.reserve(count);
    auto position = [&](core::Rng& r) -> Point {
        return {r.uniform(0.0, cfg.width - 1.0), r.uniform(0.0, cfg.height - 1.0)};
    };
    for (int k = 0; k < count; ++k) {
        render::GaussianFeature f = sample_feature(cfg.cr, rng, render::Polarity::Bright);
        Point p = position(rng);
        f.x = p.x;
        f.y = p.y;
        crs.push_back(f);
    }
    place_nonoverlapping(crs, cfg.cr_separation_factor, position, rng);
    for (int k = 0; k < count; ++k) {
        scene.bright_features.push_back({crs[k], BrightRole::Cr, k, true});
        scene.truth.crs.push_back({k, crs[k].x, crs[k].y, true});
    }
}

void set_pupil_truth(Scene& scene, const render::GaussianFeature& pupil) {
    scene.truth.has_pupil = true;
    scene.truth.pupil_x = pupil.x;
    scene.truth.pupil_y = pupil.y;
    scene.truth.pupil_alpha = pupil.alpha;
    scene.truth.pupil_beta = pupil.beta;
    scene.truth.pupil_theta = pupil.theta;
}

} // namespace

Scene sample_pupil_scene(const ScenarioConfig& cfg, core::Rng& rng) {
    Scene scene;
    scene.width = cfg.width;
    scene.height = cfg.height;
    scene.background = UniformBackground{cfg.background_luminance.sample(rng)};

    render::GaussianFeature pupil = sample_feature(cfg.pupil, rng, render::Polarity::Dark);
    Point c = (cfg.stage == 2 && cfg.stage2.center_span)
                  ? stage2_center(cfg.width, cfg.height, *cfg.stage2.center_span, rng)
                  : sample_center_with_margin(cfg.width, cfg.height, pupil.beta, rng);
    pupil.x = c.x;
    pupil.y = c.y;
    scene.dark_features.push_back(pupil);
    set_pupil_truth(scene, pupil);

    add_random_crs(scene, cfg, rng);
    scene.noise_sigma = cfg.noise_sigma.sample(rng);
    return scene;
}

Scene sample_full_eye_scene(const ScenarioConfig& cfg, core::Rng& rng) {
    Scene scene;
    scene.width = cfg.width;
    scene.height = cfg.height;

    LayeredEyeBackground eye;
    eye.sclera_luminance = cfg.sclera_luminance.sample(rng);

    render::GaussianFeature pupil = sample_feature(cfg.pupil, rng, render::Polarity::Dark);
    Point c = sample_center_with_margin(cfg.width, cfg.height, pupil.beta, rng);
    pupil.x = c.x;
    pupil.y = c.y;

    eye.iris.alpha = cfg.iris_alpha.sample(rng);
    eye.iris.beta = eye.iris.alpha * cfg.iris_beta_ratio.sample(rng);
    eye.iris.theta = rng.uniform(0.0, kPi);
    eye.iris.luminance = cfg.iris_luminance.sample(rng);
    eye.iris.edge_width = cfg.iris_edge_width.sample(rng);
    // The iris sits around the pupil with a small independent offset.
    eye.iris.center = {pupil.x + rng.uniform(-0.1, 0.1) * eye.iris.beta,
                       pupil.y + rng.uniform(-0.1, 0.1) * eye.iris.beta};
    eye.collarette = build_collarette(eye.iris, cfg, rng);
    scene.background = eye;

    scene.dark_features.push_back(pupil);
    set_pupil_truth(scene, pupil);

    add_random_crs(scene, cfg, rng);
    scene.noise_sigma = cfg.noise_sigma.sample(rng);
    return scene;
}

Scene sample_polygon_scene(const ScenarioConfig& cfg, core::Rng& rng) {
    Scene scene;
    scene.width = cfg.width;
    scene.height = cfg.height;

    GradientBackground bg;
    bg.lum_a = cfg.gradient_luminance.sample(rng);
    bg.lum_b = cfg.gradient_luminance.sample(rng);
    double axis_angle = rng.uniform(0.0, 2.0 * kPi);
    bg.axis = {std::cos(axis_angle), std::sin(axis_angle)};
    scene.background = bg;

    render::GaussianFeature pupil = sample_feature(cfg.pupil, rng, render::Polarity::Dark);
    Point c = sample_center_with_margin(cfg.width, cfg.height, pupil.beta, rng);
    pupil.x = c.x;
    pupil.y = c.y;
    scene.dark_features.push_back(pupil);
    set_pupil_truth(scene, pupil);

    Point anchor{pupil.x + rng.uniform(-cfg.anchor_jitter, cfg.anchor_jitter),
                 pupil.y + rng.uniform(-cfg.anchor_jitter, cfg.anchor_jitter)};
    PolygonLayout layout = cfg.layout_shape == LayoutShape::Ring
                               ? sample_ring_layout(cfg, anchor, rng)
                               : sample_house_layout(cfg, anchor, rng);

    for (std::size_t k = 0; k < layout.vertices.size(); ++k) {
        render::GaussianFeature f = sample_feature(cfg.cr, rng, render::Polarity::Bright);
        f.x = layout.vertices[k].x;
        f.y = layout.vertices[k].y;
        bool present = !rng.bernoulli(cfg.cr_dropout);
        scene.bright_features.push_back({f, BrightRole::Cr, static_cast<int>(k), present});
        scene.truth.crs.push_back({static_cast<int>(k), f.x, f.y, present});
    }

    if (cfg.spurious_max > 0) {
        int count = rng.uniform_int(std::min(cfg.spurious_min, cfg.spurious_max), cfg.spurious_max);
        std::vector<Point> positions =
            sample_spurious_positions(pupil, count, cfg.width, cfg.height, rng);
        for (const Point& p : positions) {
            render::GaussianFeature f;
            f.alpha = cfg.spurious_alpha.sample(rng);
            f.beta = f.alpha * cfg.spurious_beta_ratio.sample(rng);
            f.theta = rng.uniform(0.0, kPi);
            f.amplitude = cfg.spurious_amplitude.sample(rng);
            f.luminance = 255.0;
            f.polarity = render::Polarity::Bright;
            f.x = p.x;
            f.y = p.y;
            scene.bright_features.push_back({f, BrightRole::Spurious, -1, true});
        }
    }

    scene.noise_sigma = cfg.noise_sigma.sample(rng);
    return scene;
}

Scene sample_scene(const ScenarioConfig& cfg, core::Rng& rng) {
    switch (cfg.family) {
        case SceneFamily::CrOnLine: return sample_cr_scene(cfg, rng);
        case SceneFamily::PupilOnUniform: return sample_pupil_scene(cfg, rng);
        case SceneFamily::FullEye: return sample_full_eye_scene(cfg, rng);
        case SceneFamily::PolygonRig: return sample_polygon_scene(cfg, rng);
    }
    throw std::logic_error("sample_scene: unknown family");
}

} // namespace leyes::scenario
