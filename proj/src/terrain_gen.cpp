#include "ace/terrain_gen.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ace/errors.hpp"

namespace ace {

namespace {

constexpr double kPi = 3.14159265358979323846;

Dem centered_grid(double extent_x, double extent_y, double resolution) {
    const int n_cols = std::max(1, static_cast<int>(std::llround(extent_x / resolution)));
    const int n_rows = std::max(1, static_cast<int>(std::llround(extent_y / resolution)));
    return Dem(n_rows, n_cols, resolution, -0.5 * n_cols * resolution,
               -0.5 * n_rows * resolution);
}

}  // namespace

Dem generate_quadratic(double a, double extent_x, double extent_y, double resolution) {
    Dem dem = centered_grid(extent_x, extent_y, resolution);
    for (int r = 0; r < dem.n_rows(); ++r) {
        for (int c = 0; c < dem.n_cols(); ++c) {
            const double x = dem.cell_center_x(c);
            dem.set(r, c, a * x * x);
        }
    }
    return dem;
}

Dem generate_bump(double extent_x, double extent_y, double resolution,
                  double bump_height, double bump_cx, double bump_cy,
                  double bump_radius) {
    Dem dem = centered_grid(extent_x, extent_y, resolution);
    if (bump_height != 0.0) {
        if (bump_cx - bump_radius < dem.min_x() || bump_cx + bump_radius > dem.max_x() ||
            bump_cy - bump_radius < dem.min_y() || bump_cy + bump_radius > dem.max_y()) {
            throw std::invalid_argument("generate_bump: bump does not fit in extent");
        }
        for (int r = 0; r < dem.n_rows(); ++r) {
            for (int c = 0; c < dem.n_cols(); ++c) {
                const double dx = dem.cell_center_x(c) - bump_cx;
                const double dy = dem.cell_center_y(r) - bump_cy;
                const double d = std::sqrt(dx * dx + dy * dy);
                if (d < bump_radius) {
                    const double elev =
                        bump_height * 0.5 * (1.0 + std::cos(kPi * d / bump_radius));
                    dem.set(r, c, -elev);
                }
            }
        }
    }
    return dem;
}

Dem generate_slope(double slope_angle, double extent_x, double extent_y,
                   double resolution) {
    Dem dem = centered_grid(extent_x, extent_y, resolution);
    const double grade = std::tan(slope_angle);
    for (int r = 0; r < dem.n_rows(); ++r) {
        for (int c = 0; c < dem.n_cols(); ++c) {
            dem.set(r, c, -grade * dem.cell_center_x(c));
        }
    }
    return dem;
}

RockFieldResult generate_rock_field(double cfa, double extent_x, double extent_y,
                                    double resolution, std::uint64_t seed,
                                    const std::vector<Disc>& exclusions) {
    if (cfa < 0.0 || cfa > 0.25) {
        throw std::invalid_argument("generate_rock_field: cfa must be in [0, 0.25]");
    }
    RockFieldResult out;
    out.dem = centered_grid(extent_x, extent_y, resolution);
    if (cfa == 0.0) return out;

    // Exponential rock size-frequency model after the Mars rock-abundance
    // literature (Golombek et al.): cumulative area covered by rocks of
    // diameter >= D is F(D) = k * exp(-q(k) * D) with q(k) = 1.79 + 0.152/k.
    const double q = 1.79 + 0.152 / cfa;
    const double d_min = std::max(2.0 * resolution, 0.15);
    const double d_max = 2.5;

    struct Rock {
        double x, y, radius;
    };
    std::vector<Rock> rocks;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    const double area = extent_x * extent_y;
    const double target = cfa * area;
    const double x0 = out.dem.min_x(), x1 = out.dem.max_x();
    const double y0 = out.dem.min_y(), y1 = out.dem.max_y();

    // Diameter sampling: number density is proportional to exp(-qD) / D^2.
    // Draw from the truncated exponential and thin by (d_min/D)^2.
    const double e0 = std::exp(-q * d_min), e1 = std::exp(-q * d_max);
    const auto draw_diameter = [&]() {
        for (;;) {
            const double u = unit(rng);
            const double d = -std::log(e0 - u * (e0 - e1)) / q;
            const double accept = (d_min / d) * (d_min / d);
            if (unit(rng) <= accept) return d;
        }
    };

    double covered = 0.0;
    const long max_attempts = 500000;
    long attempts = 0;
    while (covered < target - 0.5 * kPi * 0.25 * d_min * d_min) {
        if (++attempts > max_attempts) {
            throw PlacementFailure("generate_rock_field: coverage target not reached");
        }
        const double d = draw_diameter();
        const double rad = 0.5 * d;
        // Stop cleanly if one more rock of this size would overshoot the
        // +-0.5 percentage point tolerance band.
        const double rock_area = kPi * rad * rad;
        if (covered + rock_area > target + 0.005 * area) continue;
        const double cx = x0 + rad + unit(rng) * std::max(0.0, (x1 - x0) - d);
        const double cy = y0 + rad + unit(rng) * std::max(0.0, (y1 - y0) - d);
        bool blocked = false;
        for (const auto& r : rocks) {
            const double dx = r.x - cx, dy = r.y - cy;
            if (dx * dx + dy * dy < (r.radius + rad) * (r.radius + rad)) {
                blocked = true;
                break;
            }
        }
        if (!blocked) {
            for (const auto& e : exclusions) {
                const double dx = e.x - cx, dy = e.y - cy;
                if (dx * dx + dy * dy < (e.radius + rad) * (e.radius + rad)) {
                    blocked = true;
                    break;
                }
            }
        }
        if (blocked) continue;
        rocks.push_back({cx, cy, rad});
        covered += rock_area;
    }

    for (const auto& rock : rocks) {
        const int r0 = std::max(0, out.dem.row_of(rock.y - rock.radius));
        const int r1 = std::min(out.dem.n_rows() - 1, out.dem.row_of(rock.y + rock.radius));
        const int c0 = std::max(0, out.dem.col_of(rock.x - rock.radius));
        const int c1 = std::min(out.dem.n_cols() - 1, out.dem.col_of(rock.x + rock.radius));
        const double rr = rock.radius * rock.radius;
        for (int r = r0; r <= r1; ++r) {
            const double dy = out.dem.cell_center_y(r) - rock.y;
            for (int c = c0; c <= c1; ++c) {
                const double dx = out.dem.cell_center_x(c) - rock.x;
                const double d2 = dx * dx + dy * dy;
                if (d2 >= rr) continue;
                const double elev = std::sqrt(rr - d2);  // hemisphere
                out.dem.set(r, c, std::min(out.dem.at(r, c), -elev));
            }
        }
    }
    out.achieved_cfa = covered / area;
    out.rocks_placed = static_cast<int>(rocks.size());
    return out;
}

void add_height_noise(Dem& dem, double sigma, double clamp_abs, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, sigma);
    for (int r = 0; r < dem.n_rows(); ++r) {
        for (int c = 0; c < dem.n_cols(); ++c) {
            if (!dem.known(r, c)) continue;
            const double n = std::clamp(gauss(rng), -clamp_abs, clamp_abs);
            dem.set(r, c, dem.at(r, c) + n);
        }
    }
}

}  // namespace ace
