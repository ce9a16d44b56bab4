#pragma once

#include <cstdint>
#include <vector>

#include "ace/terrain.hpp"

namespace ace {

/// Grid with height a*x^2 (z-down), centered on (0, 0). Convex terrain for
/// negative a, concave for positive a.
Dem generate_quadratic(double a, double extent_x, double extent_y, double resolution);

/// Flat grid plus one smooth cosine-profile bump. bump_height is the
/// physical (upward) peak height; cells store z-down values.
Dem generate_bump(double extent_x, double extent_y, double resolution,
                  double bump_height, double bump_cx, double bump_cy,
                  double bump_radius);

struct Disc {
    double x = 0.0, y = 0.0, radius = 0.0;
};

struct RockFieldResult {
    Dem dem;
    double achieved_cfa = 0.0;  // analytic covered-area fraction
    int rocks_placed = 0;
};

/// Flat grid populated with non-overlapping hemispherical rocks whose
/// diameters follow an exponential size-frequency model (Golombek-style
/// cumulative area F(D) = cfa * exp(-q(cfa) * D)). Placement is uniform,
/// deterministic per seed, and keeps clear of the given exclusion discs.
/// Throws PlacementFailure when the coverage target cannot be met.
RockFieldResult generate_rock_field(double cfa, double extent_x, double extent_y,
                                    double resolution, std::uint64_t seed,
                                    const std::vector<Disc>& exclusions = {});

/// Adds zero-mean Gaussian per-cell height noise, clamped to +-clamp_abs.
/// Deterministic per seed.
void add_height_noise(Dem& dem, double sigma, double clamp_abs, std::uint64_t seed);

/// Uniform slope: height decreases (rises physically) along +x at the given
/// grade angle [rad].
Dem generate_slope(double slope_angle, double extent_x, double extent_y,
                   double resolution);

}  // namespace ace
