#include "ace/planefit.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace ace {

PlanefitMetrics planefit_window(const Dem& dem, double cx, double cy, double radius) {
    PlanefitMetrics out;
    if (cx - radius < dem.min_x() || cx + radius > dem.max_x() ||
        cy - radius < dem.min_y() || cy + radius > dem.max_y()) {
        out.status = QueryStatus::OutOfBounds;
        return out;
    }
    const int r0 = std::max(0, dem.row_of(cy - radius));
    const int r1 = std::min(dem.n_rows() - 1, dem.row_of(cy + radius));
    const int c0 = std::max(0, dem.col_of(cx - radius));
    const int c1 = std::min(dem.n_cols() - 1, dem.col_of(cx + radius));
    const double rr = radius * radius;

    double n = 0.0, su = 0.0, sv = 0.0, suu = 0.0, suv = 0.0, svv = 0.0;
    double sz = 0.0, suz = 0.0, svz = 0.0;
    for (int r = r0; r <= r1; ++r) {
        const double v = dem.cell_center_y(r) - cy;
        for (int c = c0; c <= c1; ++c) {
            const double u = dem.cell_center_x(c) - cx;
            if (u * u + v * v > rr) continue;
            if (!dem.known(r, c)) {
                out.status = QueryStatus::Unknown;
                return out;
            }
            const double z = dem.at(r, c);
            n += 1.0;
            su += u;
            sv += v;
            suu += u * u;
            suv += u * v;
            svv += v * v;
            sz += z;
            suz += u * z;
            svz += v * z;
        }
    }
    out.cells = static_cast<int>(n);
    double z0, gx, gy;
    const double det = n * (suu * svv - suv * suv) - su * (su * svv - suv * sv) +
                       sv * (su * suv - suu * sv);
    if (out.cells >= 3 && std::abs(det) > 1e-12) {
        const double d0 = sz * (suu * svv - suv * suv) - su * (suz * svv - suv * svz) +
                          sv * (suz * suv - suu * svz);
        const double d1 = n * (suz * svv - suv * svz) - sz * (su * svv - suv * sv) +
                          sv * (su * svz - suz * sv);
        const double d2 = n * (suu * svz - suz * suv) - su * (su * svz - suz * sv) +
                          sz * (su * suv - suu * sv);
        z0 = d0 / det;
        gx = d1 / det;
        gy = d2 / det;
    } else {
        z0 = out.cells > 0 ? sz / n : 0.0;
        gx = gy = 0.0;
    }
    out.z_center = z0;
    out.dz_dx = gx;
    out.dz_dy = gy;
    out.slope = std::atan(std::hypot(gx, gy));

    for (int r = r0; r <= r1; ++r) {
        const double v = dem.cell_center_y(r) - cy;
        for (int c = c0; c <= c1; ++c) {
            const double u = dem.cell_center_x(c) - cx;
            if (u * u + v * v > rr) continue;
            const double z = dem.at(r, c);
            out.roughness = std::max(out.roughness, std::abs(z - (z0 + gx * u + gy * v)));
            // Step hazards against the right and upper neighbors.
            if (c + 1 < dem.n_cols() && dem.known(r, c + 1)) {
                out.step = std::max(out.step, std::abs(dem.at(r, c + 1) - z));
            }
            if (r + 1 < dem.n_rows() && dem.known(r + 1, c)) {
                out.step = std::max(out.step, std::abs(dem.at(r + 1, c) - z));
            }
        }
    }
    return out;
}

double rover_footprint_radius(const RoverModel& model) {
    int count = 0;
    const auto wheels = model.active_wheels(count);
    double r = 0.0;
    for (int i = 0; i < count; ++i) {
        const Vec3& w = model.wheel_nominal()[wheels[i]];
        r = std::max(r, std::abs(w.x));
    }
    return r + model.params().wheel_radius;
}

PlanefitChecker::PlanefitChecker(const Dem& dem, const RoverModel& model,
                                 const PlanefitThresholds& th)
    : dem_(dem), rover_radius_(rover_footprint_radius(model)) {
    const int rows = dem.n_rows(), cols = dem.n_cols();
    std::vector<std::uint8_t> goodness(static_cast<std::size_t>(rows) * cols,
                                       static_cast<std::uint8_t>(CellGoodness::Good));
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            const PlanefitMetrics m = planefit_window(
                dem, dem.cell_center_x(c), dem.cell_center_y(r), th.window_radius);
            CellGoodness g = CellGoodness::Good;
            if (m.status != QueryStatus::Ok) {
                g = CellGoodness::Unknown;
            } else if (m.slope > th.max_slope || m.roughness > th.max_roughness ||
                       m.step > th.max_step) {
                g = CellGoodness::Bad;
            }
            goodness[static_cast<std::size_t>(r) * cols + c] = static_cast<std::uint8_t>(g);
        }
    }

    // Worst-value dilation by the rover radius.
    dilated_.assign(goodness.size(), 0);
    const int reach = static_cast<int>(std::ceil(rover_radius_ / dem.resolution()));
    const double rr = rover_radius_ * rover_radius_;
    const double res = dem.resolution();
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            std::uint8_t worst = 0;
            for (int dr = -reach; dr <= reach; ++dr) {
                const int nr = r + dr;
                if (nr < 0 || nr >= rows) continue;
                for (int dc = -reach; dc <= reach; ++dc) {
                    const int nc = c + dc;
                    if (nc < 0 || nc >= cols) continue;
                    if ((dr * res) * (dr * res) + (dc * res) * (dc * res) > rr) continue;
                    worst = std::max(worst, goodness[static_cast<std::size_t>(nr) * cols + nc]);
                    if (worst == 2) break;
                }
                if (worst == 2) break;
            }
            dilated_[static_cast<std::size_t>(r) * cols + c] = worst;
        }
    }
}

PlanefitChecker::Verdict PlanefitChecker::check(const Pose2D& pose) const {
    const int r = dem_.row_of(pose.y);
    const int c = dem_.col_of(pose.x);
    if (!dem_.in_grid(r, c)) return Verdict::Unevaluatable;
    switch (dilated_[static_cast<std::size_t>(r) * dem_.n_cols() + c]) {
        case 0: return Verdict::Safe;
        case 2: return Verdict::Unsafe;
        default: return Verdict::Unevaluatable;
    }
}

PlanefitEstimate planefit_estimate(const Dem& dem, const Pose2D& pose,
                                   const RoverModel& model, double window_radius) {
    PlanefitEstimate out;
    const PlanefitMetrics m = planefit_window(dem, pose.x, pose.y, window_radius);
    if (m.status != QueryStatus::Ok) {
        out.status = m.status;
        return out;
    }
    const double c = std::cos(pose.psi), s = std::sin(pose.psi);
    const double dz_du = m.dz_dx * c + m.dz_dy * s;   // along heading
    const double dz_dv = -m.dz_dx * s + m.dz_dy * c;  // to the right
    out.theta = std::atan(-dz_du);
    out.phi = std::atan(dz_dv);
    out.roughness = m.roughness;

    BodyState body;
    body.phi = out.phi;
    body.theta = out.theta;
    body.z_o = m.z_center;
    const double z_p = pan_lowest_height(body, model);

    const auto& p = model.params();
    WheelBoxQuery q;
    q.center_x = 0.0;
    q.center_y = 0.0;
    q.dim_x = p.l_p + 2.0 * p.c0 * std::sin(std::abs(out.theta));
    q.dim_y = p.w_p + 2.0 * p.c0 * std::sin(std::abs(out.phi));
    const BoxQueryResult g = minmax_in_box(dem, pose, q);
    if (!g.ok()) {
        out.status = g.status;
        return out;
    }
    out.clearance = g.range.lo - z_p;
    return out;
}

PlanefitEstimate planefit_points_estimate(const Dem& dem, const Pose2D& pose,
                                          const RoverModel& model,
                                          double window_radius) {
    PlanefitEstimate out;
    const double cx = pose.x, cy = pose.y, radius = window_radius;
    if (cx - radius < dem.min_x() || cx + radius > dem.max_x() ||
        cy - radius < dem.min_y() || cy + radius > dem.max_y()) {
        out.status = QueryStatus::OutOfBounds;
        return out;
    }

    // Gather the window into a point list.
    std::vector<double> px, py, pz;
    const std::size_t expect = static_cast<std::size_t>(
        3.2 * radius * radius * dem.inv_resolution() * dem.inv_resolution() + 8.0);
    px.reserve(expect);
    py.reserve(expect);
    pz.reserve(expect);
    const int r0 = dem.row_of(cy - radius), r1 = dem.row_of(cy + radius);
    const int c0 = dem.col_of(cx - radius), c1 = dem.col_of(cx + radius);
    for (int r = std::max(0, r0); r <= std::min(dem.n_rows() - 1, r1); ++r) {
        for (int c = std::max(0, c0); c <= std::min(dem.n_cols() - 1, c1); ++c) {
            const double x = dem.cell_center_x(c), y = dem.cell_center_y(r);
            if ((x - cx) * (x - cx) + (y - cy) * (y - cy) > radius * radius) continue;
            if (!dem.known(r, c)) {
                out.status = QueryStatus::Unknown;
                return out;
            }
            px.push_back(x - cx);
            py.push_back(y - cy);
            pz.push_back(dem.at(r, c));
        }
    }
    if (px.size() < 3) {
        out.status = QueryStatus::OutOfBounds;
        return out;
    }

    // Dense least squares for z = z0 + gx*u + gy*v via Householder QR, the
    // way a general linear-algebra routine solves an N x 3 system.
    const std::size_t m = px.size();
    std::vector<double> A(m * 3);
    std::vector<double> rhs(pz);
    for (std::size_t i = 0; i < m; ++i) {
        A[i * 3 + 0] = 1.0;
        A[i * 3 + 1] = px[i];
        A[i * 3 + 2] = py[i];
    }
    double rdiag[3] = {0.0, 0.0, 0.0};
    for (int k = 0; k < 3; ++k) {
        double norm2 = 0.0;
        for (std::size_t i = k; i < m; ++i) norm2 += A[i * 3 + k] * A[i * 3 + k];
        const double norm = std::sqrt(norm2);
        if (norm == 0.0) continue;
        const double alpha = A[k * 3 + k] >= 0.0 ? -norm : norm;
        // Householder vector stored in place of the k-th column.
        A[k * 3 + k] -= alpha;
        double vnorm2 = 0.0;
        for (std::size_t i = k; i < m; ++i) vnorm2 += A[i * 3 + k] * A[i * 3 + k];
        rdiag[k] = alpha;
        if (vnorm2 == 0.0) continue;
        for (int j = k + 1; j < 3; ++j) {
            double dot = 0.0;
            for (std::size_t i = k; i < m; ++i) dot += A[i * 3 + k] * A[i * 3 + j];
            const double f = 2.0 * dot / vnorm2;
            for (std::size_t i = k; i < m; ++i) A[i * 3 + j] -= f * A[i * 3 + k];
        }
        double dot = 0.0;
        for (std::size_t i = k; i < m; ++i) dot += A[i * 3 + k] * rhs[i];
        const double f = 2.0 * dot / vnorm2;
        for (std::size_t i = k; i < m; ++i) rhs[i] -= f * A[i * 3 + k];
    }
    double coef[3] = {0.0, 0.0, 0.0};
    for (int k = 2; k >= 0; --k) {
        double v = rhs[k];
        for (int j = k + 1; j < 3; ++j) v -= A[k * 3 + j] * coef[j];
        coef[k] = rdiag[k] != 0.0 ? v / rdiag[k] : 0.0;
    }
    const double z0 = coef[0], gx = coef[1], gy = coef[2];

    double rough = 0.0;
    for (std::size_t i = 0; i < px.size(); ++i) {
        rough = std::max(rough, std::abs(pz[i] - (z0 + gx * px[i] + gy * py[i])));
    }
    out.roughness = rough;

    const double c = std::cos(pose.psi), s = std::sin(pose.psi);
    const double dz_du = gx * c + gy * s;
    const double dz_dv = -gx * s + gy * c;
    out.theta = std::atan(-dz_du);
    out.phi = std::atan(dz_dv);

    BodyState body;
    body.phi = out.phi;
    body.theta = out.theta;
    body.z_o = z0;
    const double z_p = pan_lowest_height(body, model);
    const auto& p = model.params();
    WheelBoxQuery q;
    q.dim_x = p.l_p + 2.0 * p.c0 * std::sin(std::abs(out.theta));
    q.dim_y = p.w_p + 2.0 * p.c0 * std::sin(std::abs(out.phi));
    const BoxQueryResult g = minmax_in_box(dem, pose, q);
    if (!g.ok()) {
        out.status = g.status;
        return out;
    }
    out.clearance = g.range.lo - z_p;
    return out;
}

}  // namespace ace
