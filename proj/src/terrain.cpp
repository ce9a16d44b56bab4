#include "ace/terrain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ace {

Dem::Dem(int n_rows, int n_cols, double resolution, double origin_x, double origin_y,
         double fill, bool known)
    : n_rows_(n_rows),
      n_cols_(n_cols),
      resolution_(resolution),
      inv_resolution_(1.0 / resolution),
      origin_x_(origin_x),
      origin_y_(origin_y),
      unknown_count_(known ? 0 : static_cast<long>(n_rows) * n_cols),
      cells_(static_cast<std::size_t>(n_rows) * n_cols, fill),
      known_(static_cast<std::size_t>(n_rows) * n_cols, known ? 1 : 0) {
    if (n_rows <= 0 || n_cols <= 0 || !(resolution > 0.0)) {
        throw std::invalid_argument("Dem: non-positive dimensions or resolution");
    }
}

double normalize_angle(double a) {
    constexpr double kPi = 3.14159265358979323846;
    a = std::fmod(a, 2.0 * kPi);
    if (a <= -kPi) a += 2.0 * kPi;
    if (a > kPi) a -= 2.0 * kPi;
    return a;
}

namespace {

struct Quad {
    double x[4];
    double y[4];
};

Quad box_corners(const OrientedBox& b, double c, double s) {
    Quad q;
    const double ex[4] = {+b.half_x, +b.half_x, -b.half_x, -b.half_x};
    const double ey[4] = {+b.half_y, -b.half_y, -b.half_y, +b.half_y};
    for (int i = 0; i < 4; ++i) {
        q.x[i] = b.cx + c * ex[i] - s * ey[i];
        q.y[i] = b.cy + s * ex[i] + c * ey[i];
    }
    return q;
}

}  // namespace

BoxQueryResult minmax_in_oriented_box(const Dem& dem, const OrientedBox& box,
                                      double cos_psi, double sin_psi) {
    const Quad q = box_corners(box, cos_psi, sin_psi);
    double qx0 = q.x[0], qx1 = q.x[0], qy0 = q.y[0], qy1 = q.y[0];
    for (int i = 1; i < 4; ++i) {
        qx0 = std::min(qx0, q.x[i]);
        qx1 = std::max(qx1, q.x[i]);
        qy0 = std::min(qy0, q.y[i]);
        qy1 = std::max(qy1, q.y[i]);
    }
    if (qx0 < dem.min_x() || qx1 > dem.max_x() || qy0 < dem.min_y() || qy1 > dem.max_y()) {
        return {QueryStatus::OutOfBounds, Interval{}};
    }

    const double res = dem.resolution();
    const int row0 = std::max(0, dem.row_of(qy0));
    const int row1 = std::min(dem.n_rows() - 1, dem.row_of(qy1));
    const int n_spans = row1 - row0 + 1;
    constexpr int kMaxSpans = 512;
    double sx0[kMaxSpans], sx1[kMaxSpans];
    if (n_spans > kMaxSpans) return {QueryStatus::OutOfBounds, Interval{}};
    for (int i = 0; i < n_spans; ++i) {
        sx0[i] = std::numeric_limits<double>::infinity();
        sx1[i] = -std::numeric_limits<double>::infinity();
    }
    const auto update = [&](int row, double x) {
        const int i = row - row0;
        if (i < 0 || i >= n_spans) return;
        sx0[i] = std::min(sx0[i], x);
        sx1[i] = std::max(sx1[i], x);
    };
    // Scanline rasterization of the convex quad: vertices mark their own
    // row; each edge walks the slab boundaries it crosses, marking both
    // adjacent rows with an incrementally updated intersection.
    for (int i = 0; i < 4; ++i) {
        update(dem.row_of(q.y[i]), q.x[i]);
        const int j = (i + 1) & 3;
        const double ya = q.y[i], yb = q.y[j];
        const double xa = q.x[i], xb = q.x[j];
        if (ya == yb) continue;  // horizontal edges are covered by vertices
        const double ylo = std::min(ya, yb), yhi = std::max(ya, yb);
        const double dxdy = (xb - xa) / (yb - ya);
        const int k0 =
            static_cast<int>(std::ceil((ylo - dem.min_y()) * dem.inv_resolution()));
        const int k1 =
            static_cast<int>(std::floor((yhi - dem.min_y()) * dem.inv_resolution()));
        double x = xa + (dem.min_y() + k0 * res - ya) * dxdy;
        const double dx = res * dxdy;
        for (int k = k0; k <= k1; ++k, x += dx) {
            update(k - 1, x);
            update(k, x);
        }
    }

    double zmin = std::numeric_limits<double>::infinity();
    double zmax = -std::numeric_limits<double>::infinity();
    bool any = false;
    const bool all_known = dem.all_known();
    for (int i = 0; i < n_spans; ++i) {
        if (!(sx0[i] <= sx1[i])) continue;
        const int r = row0 + i;
        const int c0 = std::max(0, dem.col_of(sx0[i]));
        const int c1 = std::min(dem.n_cols() - 1, dem.col_of(sx1[i]));
        if (c1 < c0) continue;
        const double* z = dem.row_data(r);
        if (all_known) {
            // Two accumulator pairs keep the min/max dependency chains short.
            double lo0 = zmin, hi0 = zmax;
            double lo1 = zmin, hi1 = zmax;
            int c = c0;
            for (; c + 1 <= c1; c += 2) {
                lo0 = std::min(lo0, z[c]);
                hi0 = std::max(hi0, z[c]);
                lo1 = std::min(lo1, z[c + 1]);
                hi1 = std::max(hi1, z[c + 1]);
            }
            if (c <= c1) {
                lo0 = std::min(lo0, z[c]);
                hi0 = std::max(hi0, z[c]);
            }
            zmin = std::min(lo0, lo1);
            zmax = std::max(hi0, hi1);
        } else {
            const std::uint8_t* kn = dem.row_known(r);
            for (int c = c0; c <= c1; ++c) {
                if (!kn[c]) return {QueryStatus::Unknown, Interval{}};
                const double v = z[c];
                zmin = std::min(zmin, v);
                zmax = std::max(zmax, v);
            }
        }
        any = true;
    }
    if (!any) {
        // Degenerate box thinner than the grid; fall back to the center cell.
        const int r = dem.row_of(box.cy);
        const int c = dem.col_of(box.cx);
        if (!dem.in_grid(r, c)) return {QueryStatus::OutOfBounds, Interval{}};
        if (!dem.known(r, c)) return {QueryStatus::Unknown, Interval{}};
        const double v = dem.at(r, c);
        return {QueryStatus::Ok, Interval(v, v)};
    }
    return {QueryStatus::Ok, Interval(zmin, zmax)};
}

BoxQueryResult minmax_in_oriented_box(const Dem& dem, const OrientedBox& box) {
    return minmax_in_oriented_box(dem, box, std::cos(box.psi), std::sin(box.psi));
}

BoxQueryResult minmax_in_box(const Dem& dem, const Pose2D& pose, const WheelBoxQuery& box) {
    const double c = std::cos(pose.psi), s = std::sin(pose.psi);
    OrientedBox ob;
    ob.cx = pose.x + c * box.center_x - s * box.center_y;
    ob.cy = pose.y + s * box.center_x + c * box.center_y;
    ob.half_x = 0.5 * box.dim_x;
    ob.half_y = 0.5 * box.dim_y;
    ob.psi = pose.psi;
    return minmax_in_oriented_box(dem, ob, c, s);
}

namespace {

bool point_in_box(const OrientedBox& b, double px, double py) {
    const double c = std::cos(b.psi), s = std::sin(b.psi);
    const double dx = px - b.cx, dy = py - b.cy;
    const double u = c * dx + s * dy;
    const double v = -s * dx + c * dy;
    return std::abs(u) <= b.half_x && std::abs(v) <= b.half_y;
}

ContactResult contact_impl(const Dem& dem, double cx, double cy, double radius,
                           const OrientedBox* clip) {
    if (cx - radius < dem.min_x() || cx + radius > dem.max_x() ||
        cy - radius < dem.min_y() || cy + radius > dem.max_y()) {
        return {QueryStatus::OutOfBounds, 0.0, 0.0, 0.0};
    }
    const int r0 = dem.row_of(cy - radius);
    const int r1 = dem.row_of(cy + radius);
    const int c0 = dem.col_of(cx - radius);
    const int c1 = dem.col_of(cx + radius);
    const double rr = radius * radius;
    bool found = false;
    double best_z = 0.0, best_d2 = 0.0, best_px = 0.0, best_py = 0.0;
    for (int r = std::max(0, r0); r <= std::min(dem.n_rows() - 1, r1); ++r) {
        const double py = dem.cell_center_y(r);
        const double dy = py - cy;
        for (int c = std::max(0, c0); c <= std::min(dem.n_cols() - 1, c1); ++c) {
            const double px = dem.cell_center_x(c);
            const double dx = px - cx;
            const double d2 = dx * dx + dy * dy;
            if (d2 > rr) continue;
            if (clip && !point_in_box(*clip, px, py)) continue;
            if (!dem.known(r, c)) return {QueryStatus::Unknown, 0.0, 0.0, 0.0};
            const double z = dem.at(r, c);
            if (!found || z < best_z || (z == best_z && d2 < best_d2)) {
                found = true;
                best_z = z;
                best_d2 = d2;
                best_px = px;
                best_py = py;
            }
        }
    }
    if (!found) {
        // No cell center in the disc (or clip cut them all): use the cell
        // under the wheel center.
        const int r = dem.row_of(cy);
        const int c = dem.col_of(cx);
        if (!dem.in_grid(r, c)) return {QueryStatus::OutOfBounds, 0.0, 0.0, 0.0};
        if (!dem.known(r, c)) return {QueryStatus::Unknown, 0.0, 0.0, 0.0};
        return {QueryStatus::Ok, dem.at(r, c), dem.cell_center_x(c), dem.cell_center_y(r)};
    }
    return {QueryStatus::Ok, best_z, best_px, best_py};
}

}  // namespace

ContactResult contact_under_disc(const Dem& dem, double cx, double cy, double radius) {
    return contact_impl(dem, cx, cy, radius, nullptr);
}

ContactResult contact_under_disc_clipped(const Dem& dem, double cx, double cy,
                                         double radius, const OrientedBox& clip) {
    return contact_impl(dem, cx, cy, radius, &clip);
}

}  // namespace ace
