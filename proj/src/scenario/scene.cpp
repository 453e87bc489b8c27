#include "leyes/scenario/scene.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace leyes::scenario {

namespace {

/// Raised-cosine blend weight: 1 inside the shape, 0 beyond the edge span,
/// 0.5*(1+cos(pi t)) across it.
double edge_weight(double outward_distance, double edge_width) {
    if (outward_distance <= 0.0) return 1.0;
    if (edge_width <= 0.0 || outward_distance >= edge_width) return 0.0;
    double t = outward_distance / edge_width;
    return 0.5 * (1.0 + std::cos(t * 3.14159265358979323846));
}

/// Distance from p to the ellipse boundary measured along the ray from the
/// center (exact for circles; the radial approximation is adequate for the
/// soft-edge blend). Negative inside.
double ellipse_outward_distance(const IrisSpec& e, double x, double y) {
    double dx = x - e.center.x;
    double dy = y - e.center.y;
    double ct = std::cos(e.theta), st = std::sin(e.theta);
    double u = (dx * ct + dy * st) / e.alpha;
    double v = (-dx * st + dy * ct) / e.beta;
    double rho = std::sqrt(u * u + v * v);
    if (rho == 0.0) return -std::min(e.alpha, e.beta);
    double dist = std::sqrt(dx * dx + dy * dy);
    return dist * (rho - 1.0) / rho;
}

bool point_in_polygon(const std::vector<Point>& poly, double x, double y) {
    bool inside = false;
    std::size_t n = poly.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        bool crosses = (poly[i].y > y) != (poly[j].y > y);
        if (crosses) {
            double t = (y - poly[i].y) / (poly[j].y - poly[i].y);
            double xi = poly[i].x + t * (poly[j].x - poly[i].x);
            if (x < xi) inside = !inside;
        }
    }
    return inside;
}

double distance_to_polygon(const std::vector<Point>& poly, double x, double y) {
    double best = std::numeric_limits<double>::max();
    std::size_t n = poly.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        double ax = poly[j].x, ay = poly[j].y;
        double bx = poly[i].x, by = poly[i].y;
        double ex = bx - ax, ey = by - ay;
        double len2 = ex * ex + ey * ey;
        double t = len2 > 0.0 ? std::clamp(((x - ax) * ex + (y - ay) * ey) / len2, 0.0, 1.0) : 0.0;
        double px = ax + t * ex, py = ay + t * ey;
        best = std::min(best, std::hypot(x - px, y - py));
    }
    return best;
}

void paint_layered_eye(core::FloatImage& img, const LayeredEyeBackground& eye) {
    for (double& v : img.values) v = eye.sclera_luminance;
    const IrisSpec& iris = eye.iris;
    for (int i = 0; i < img.height; ++i) {
        for (int j = 0; j < img.width; ++j) {
            double w = edge_weight(ellipse_outward_distance(iris, j, i), iris.edge_width);
            if (w > 0.0) img.at(i, j) += (iris.luminance - img.at(i, j)) * w;
        }
    }
    const CollaretteSpec& col = eye.collarette;
    if (col.polygon.empty()) return;
    // Bounding box keeps the per-pixel polygon distance affordable.
    double max_r = 0.0;
    for (const Point& p : col.polygon)
        max_r = std::max(max_r, std::hypot(p.x - col.center.x, p.y - col.center.y));
    double reach = max_r + col.edge_width + 1.0;
    int row_lo = std::max(0, static_cast<int>(std::floor(col.center.y - reach)));
    int row_hi = std::min(img.height - 1, static_cast<int>(std::ceil(col.center.y + reach)));
    int col_lo = std::max(0, static_cast<int>(std::floor(col.center.x - reach)));
    int col_hi = std::min(img.width - 1, static_cast<int>(std::ceil(col.center.x + reach)));
    for (int i = row_lo; i <= row_hi; ++i) {
        for (int j = col_lo; j <= col_hi; ++j) {
            double d = distance_to_polygon(col.polygon, j, i);
            if (point_in_polygon(col.polygon, j, i)) d = -d;
            double w = edge_weight(d, col.edge_width);
            if (w > 0.0) img.at(i, j) += (col.luminance - img.at(i, j)) * w;
        }
    }
}

} // namespace

core::FloatImage render_background(const Scene& scene) {
    core::FloatImage img(scene.width, scene.height);
    std::visit(
        [&](const auto& bg) {
            using T = std::decay_t<decltype(bg)>;
            if constexpr (std::is_same_v<T, UniformBackground>) {
                for (double& v : img.values) v = bg.luminance;
            } else if constexpr (std::is_same_v<T, SplitBackground>) {
                for (int i = 0; i < img.height; ++i)
                    for (int j = 0; j < img.width; ++j) {
                        double s = (j - bg.line.point.x) * bg.line.normal.x +
                                   (i - bg.line.point.y) * bg.line.normal.y;
                        img.at(i, j) = s >= 0.0 ? bg.dark_luminance : bg.grey_luminance;
                    }
            } else if constexpr (std::is_same_v<T, GradientBackground>) {
                // Normalize the projection over the canvas corners so the two
                // drawn luminances are attained at the extremes.
                double s_min = std::numeric_limits<double>::max();
                double s_max = std::numeric_limits<double>::lowest();
                for (double cx : {0.0, double(img.width - 1)})
                    for (double cy : {0.0, double(img.height - 1)}) {
                        double s = cx * bg.axis.x + cy * bg.axis.y;
                        s_min = std::min(s_min, s);
                        s_max = std::max(s_max, s);
                    }
                double span = std::max(s_max - s_min, 1e-12);
                for (int i = 0; i < img.height; ++i)
                    for (int j = 0; j < img.width; ++j) {
                        double t = (j * bg.axis.x + i * bg.axis.y - s_min) / span;
                        img.at(i, j) = bg.lum_a + (bg.lum_b - bg.lum_a) * t;
                    }
            } else {
                paint_layered_eye(img, bg);
            }
        },
        scene.background);
    return img;
}

core::FloatImage render_scene_pre_noise(const Scene& scene) {
    std::vector<render::GaussianFeature> bright;
    bright.reserve(scene.bright_features.size());
    for (const BrightFeature& b : scene.bright_features)
        if (b.present) bright.push_back(b.feature);
    return render::composite_scene(render_background(scene), scene.dark_features, bright);
}

core::GrayImage render_scene(const Scene& scene, core::Rng& rng) {
    core::FloatImage img = render_scene_pre_noise(scene);
    img = render::add_pixel_noise(img, scene.noise_sigma, rng);
    return core::finalize_image(img);
}

core::BinaryImage pupil_plateau_mask(const Scene& scene) {
    core::BinaryImage mask(scene.width, scene.height, 0);
    if (!scene.truth.has_pupil) return mask;
    const GroundTruth& t = scene.truth;
    double ct = std::cos(t.pupil_theta), st = std::sin(t.pupil_theta);
    for (int i = 0; i < scene.height; ++i) {
        for (int j = 0; j < scene.width; ++j) {
            double dx = j - t.pupil_x, dy = i - t.pupil_y;
            double u = (dx * ct + dy * st) / t.pupil_alpha;
            double v = (-dx * st + dy * ct) / t.pupil_beta;
            if (u * u + v * v <= 1.0) mask.at(i, j) = 1;
        }
    }
    return mask;
}

} // namespace leyes::scenario
