#pragma once

#include "leyes/core/image.hpp"
#include "leyes/vision/ellipse.hpp"

namespace leyes::vision {

inline constexpr int kCutoutSize = 180;
inline constexpr double kCrMaskRadius = 48.0;
inline constexpr double kPupilMaskScale = 1.4;

/// 180x180 crop centered on the rounded center (which lands on pixel
/// (90, 90)); pixels outside the source replicate the nearest edge pixel.
core::GrayImage crop_with_replication(const core::GrayImage& img, double center_x,
                                      double center_y, int size = kCutoutSize);

/// CR cutout: crop, then zero everything outside the 48-px-radius disk
/// around the cutout center.
core::GrayImage make_cr_cutout(const core::GrayImage& img, double center_x, double center_y);

/// Pupil cutout: crop around the given center, keep pixels inside the
/// 1.4x-scaled pupil ellipse, set the rest to middle gray 128/255.
core::GrayImage make_pupil_cutout(const core::GrayImage& img, double center_x, double center_y,
                                  const EllipseParams& ellipse);

} // namespace leyes::vision
