#pragma once

#include <span>

#include "leyes/core/image.hpp"
#include "leyes/core/rng.hpp"

namespace leyes::render {

enum class Polarity { Dark, Bright };

/// One elliptical-Gaussian light feature (pupil, CR, spurious reflection).
///
/// The unclamped surface has peak `amplitude` (> 1); the level set where the
/// surface equals 1 is exactly the ellipse with semi-axes (alpha, beta)
/// rotated by theta about (x, y). Everything at or above 1 forms the
/// luminance plateau of the feature.
struct GaussianFeature {
    double x = 0.0;      ///< horizontal center, subpixel (column units)
    double y = 0.0;      ///< vertical center, subpixel (row units)
    double theta = 0.0;  ///< orientation in [0, pi)
    double alpha = 1.0;  ///< minor-axis plateau radius, pixels
    double beta = 1.0;   ///< major-axis plateau radius, pixels
    double amplitude = 2.0;
    double luminance = 0.0;  ///< plateau intensity, 8-bit units
    Polarity polarity = Polarity::Dark;

    double sigma_alpha() const;
    double sigma_beta() const;
};

/// sigma such that the clamped profile's plateau radius along the given axis
/// equals r: sigma = r / sqrt(2 ln A). Throws std::domain_error if A <= 1.
double plateau_sigma(double r, double amplitude);

/// Unclamped Gaussian surface value at (x, y).
double eval_gaussian(const GaussianFeature& f, double x, double y);

/// Clamped profile rasterized at pixel centers; pixel (row i, col j) samples
/// the continuous point (x=j, y=i). Values outside a 6-sigma bounding box
/// are culled to zero (below quantization resolution).
core::FloatImage render_profile(const GaussianFeature& f, int width, int height);

/// Layer features onto a background, dark first then bright, left to right.
/// Dark: image <- image - (image - L) * p. Bright: image <- max(image, L * p).
core::FloatImage composite_scene(const core::FloatImage& background,
                                 std::span<const GaussianFeature> dark,
                                 std::span<const GaussianFeature> bright);

/// Add an independent zero-mean Gaussian draw of std sigma_n to every pixel.
core::FloatImage add_pixel_noise(const core::FloatImage& img, double sigma_n, core::Rng& rng);

} // namespace leyes::render
