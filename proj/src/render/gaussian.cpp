#include "leyes/render/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace leyes::render {

double plateau_sigma(double r, double amplitude) {
    if (r <= 0.0) throw std::domain_error("plateau_sigma: radius must be positive");
    if (amplitude <= 1.0) throw std::domain_error("plateau_sigma: amplitude must exceed 1");
    return r / std::sqrt(2.0 * std::log(amplitude));
}

double GaussianFeature::sigma_alpha() const { return plateau_sigma(alpha, amplitude); }
double GaussianFeature::sigma_beta() const { return plateau_sigma(beta, amplitude); }

namespace {

struct QuadCoeffs {
    double a, b, c;
};

QuadCoeffs quad_coeffs(const GaussianFeature& f) {
    double sa2 = f.sigma_alpha() * f.sigma_alpha();
    double sb2 = f.sigma_beta() * f.sigma_beta();
    double ct = std::cos(f.theta), st = std::sin(f.theta);
    double s2t = std::sin(2.0 * f.theta);
    // Cross coefficient is sin(2θ)/2 · (1/σα² − 1/σβ²); with this choice the
    // exponent equals x'²/2σα² + y'²/2σβ² in the rotated frame, so the unit
    // level set is exactly the (α, β, θ) ellipse.
    return {
        ct * ct / (2.0 * sa2) + st * st / (2.0 * sb2),
        s2t / (2.0 * sa2) - s2t / (2.0 * sb2),
        st * st / (2.0 * sa2) + ct * ct / (2.0 * sb2),
    };
}

} // namespace

double eval_gaussian(const GaussianFeature& f, double x, double y) {
    QuadCoeffs q = quad_coeffs(f);
    double dx = x - f.x;
    double dy = y - f.y;
    return f.amplitude * std::exp(-q.a * dx * dx - q.b * dx * dy - q.c * dy * dy);
}

core::FloatImage render_profile(const GaussianFeature& f, int width, int height) {
    if (width <= 0 || height <= 0)
        throw std::invalid_argument("render_profile: non-positive dimensions");
    core::FloatImage out(width, height, 0.0);
    QuadCoeffs q = quad_coeffs(f);
    double reach = 6.0 * std::max(f.sigma_alpha(), f.sigma_beta());
    int col_lo = std::max(0, static_cast<int>(std::floor(f.x - reach)));
    int col_hi = std::min(width - 1, static_cast<int>(std::ceil(f.x + reach)));
    int row_lo = std::max(0, static_cast<int>(std::floor(f.y - reach)));
    int row_hi = std::min(height - 1, static_cast<int>(std::ceil(f.y + reach)));
    for (int i = row_lo; i <= row_hi; ++i) {
        double dy = i - f.y;
        for (int j = col_lo; j <= col_hi; ++j) {
            double dx = j - f.x;
            double g = f.amplitude * std::exp(-q.a * dx * dx - q.b * dx * dy - q.c * dy * dy);
            out.at(i, j) = std::clamp(g, 0.0, 1.0);
        }
    }
    return out;
}

core::FloatImage composite_scene(const core::FloatImage& background,
                                 std::span<const GaussianFeature> dark,
                                 std::span<const GaussianFeature> bright) {
    core::FloatImage img = background;
    for (const auto& f : dark) {
        core::FloatImage p = render_profile(f, img.width, img.height);
        for (std::size_t i = 0; i < img.size(); ++i)
            img.values[i] -= (img.values[i] - f.luminance) * p.values[i];
    }
    for (const auto& f : bright) {
        core::FloatImage p = render_profile(f, img.width, img.height);
        for (std::size_t i = 0; i < img.size(); ++i)
            img.values[i] = std::max(img.values[i], f.luminance * p.values[i]);
    }
    return img;
}

core::FloatImage add_pixel_noise(const core::FloatImage& img, double sigma_n, core::Rng& rng) {
    if (sigma_n < 0.0) throw std::invalid_argument("add_pixel_noise: negative sigma");
    if (sigma_n == 0.0) return img;
    core::FloatImage out = img;
    for (double& v : out.values) v += rng.normal(0.0, sigma_n);
    return out;
}

} // namespace leyes::render
