#include "ace/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

namespace ace {

namespace {

/// Body->world rotation rows for the roll-before-pitch attitude convention
/// used by the body-height equation.
struct AttitudeRows {
    double r1[3], r2[3], r3[3];
};

AttitudeRows attitude_rows(double psi, double phi, double theta) {
    const double cy = std::cos(psi), sy = std::sin(psi);
    const double cp = std::cos(phi), sp = std::sin(phi);
    const double ct = std::cos(theta), st = std::sin(theta);
    AttitudeRows m;
    m.r1[0] = cy * ct - sy * sp * st;
    m.r1[1] = -sy * cp;
    m.r1[2] = cy * st + sy * sp * ct;
    m.r2[0] = sy * ct + cy * sp * st;
    m.r2[1] = cy * cp;
    m.r2[2] = sy * st - cy * sp * ct;
    m.r3[0] = -cp * st;
    m.r3[1] = sp;
    m.r3[2] = cp * ct;
    return m;
}

struct SolveOut {
    SuspensionState s;
    BodyState b;
    bool ok = false;
};

SolveOut run_fk(const RoverModel& model, const std::array<double, kWheelCount>& z) {
    SolveOut out;
    try {
        if (model.is_rocker_bogie()) {
            WheelHeights h;
            h.fl = z[kFrontLeft];
            h.fr = z[kFrontRight];
            h.ml = z[kMiddleLeft];
            h.mr = z[kMiddleRight];
            h.rl = z[kRearLeft];
            h.rr = z[kRearRight];
            std::tie(out.s, out.b) = solve_rocker_bogie(h, model);
        } else {
            std::tie(out.s, out.b) = solve_rocker(z[kFrontLeft], z[kFrontRight],
                                                  z[kRearLeft], z[kRearRight], model);
        }
        out.ok = true;
    } catch (const KinematicInfeasible&) {
    } catch (const AttitudeDomainError&) {
    }
    return out;
}

SettleResult settle_impl(const Dem& dem, const Pose2D& pose, const RoverModel& model,
                         const std::array<OrientedBox, kWheelCount>* boxes,
                         double tolerance, int max_iterations) {
    SettleResult best;
    best.residual = std::numeric_limits<double>::infinity();

    int count = 0;
    const auto wheels = model.active_wheels(count);
    const double r = model.params().wheel_radius;

    // Wheel ground positions, initialized from the untilted pose.
    std::array<Vec3, kWheelCount> wpos{};
    {
        const double c = std::cos(pose.psi), s = std::sin(pose.psi);
        for (int i = 0; i < count; ++i) {
            const Vec3& nom = model.wheel_nominal()[wheels[i]];
            wpos[wheels[i]] = {pose.x + c * nom.x - s * nom.y,
                               pose.y + s * nom.x + c * nom.y, 0.0};
        }
    }

    std::array<double, kWheelCount> z{};
    std::array<Vec3, kWheelCount> contacts{};
    std::array<bool, kWheelCount> have_contact{};
    // Hysteresis band: a wheel keeps its contact cell while the cell stays
    // within half a grid cell of the footprint and no strictly higher cell
    // appears. Contact heights then only ratchet upward, which rules out
    // limit cycles from cell-boundary flips.
    const double stick = r + 0.5 * dem.resolution();
    const auto detect_contacts = [&](QueryStatus& status) {
        for (int i = 0; i < count; ++i) {
            const int w = wheels[i];
            const ContactResult cr =
                boxes ? contact_under_disc_clipped(dem, wpos[w].x, wpos[w].y, r, (*boxes)[w])
                      : contact_under_disc(dem, wpos[w].x, wpos[w].y, r);
            if (cr.status != QueryStatus::Ok) {
                status = cr.status;
                return false;
            }
            if (have_contact[w]) {
                const double dx = contacts[w].x - wpos[w].x;
                const double dy = contacts[w].y - wpos[w].y;
                if (dx * dx + dy * dy <= stick * stick && contacts[w].z <= cr.z) {
                    continue;  // keep the current, at-least-as-high cell
                }
            }
            z[w] = cr.z;
            contacts[w] = {cr.px, cr.py, cr.z};
            have_contact[w] = true;
        }
        status = QueryStatus::Ok;
        return true;
    };

    QueryStatus status = QueryStatus::Ok;
    if (!detect_contacts(status)) {
        best.terrain_status = status;
        return best;
    }

    SettleResult out;
    for (int it = 1; it <= max_iterations; ++it) {
        const SolveOut fk = run_fk(model, z);
        if (!fk.ok) {
            // Terrain outside link reach; report the best iterate seen.
            best.iterations = it;
            best.infeasible = true;
            return best;
        }
        out.suspension = fk.s;
        out.body = fk.b;
        out.contacts = contacts;
        out.iterations = it;

        // Move the wheel footprints with the new body attitude and re-detect.
        const AttitudeRows rot = attitude_rows(pose.psi, fk.b.phi, fk.b.theta);
        const auto body_pos =
            model.wheel_positions(fk.s.delta_l, fk.s.beta_l, fk.s.beta_r);
        for (int i = 0; i < count; ++i) {
            const int w = wheels[i];
            const Vec3& pb = body_pos[w];
            wpos[w].x = pose.x + rot.r1[0] * pb.x + rot.r1[1] * pb.y + rot.r1[2] * pb.z;
            wpos[w].y = pose.y + rot.r2[0] * pb.x + rot.r2[1] * pb.y + rot.r2[2] * pb.z;
        }
        const std::array<double, kWheelCount> z_prev = z;
        if (!detect_contacts(status)) {
            out.terrain_status = status;
            return out;
        }
        double residual = 0.0;
        for (int i = 0; i < count; ++i) {
            residual = std::max(residual, std::abs(z[wheels[i]] - z_prev[wheels[i]]));
        }
        out.residual = residual;
        if (residual < best.residual) best = out;

        if (residual <= tolerance) {
            // Final state from the settled contacts keeps the fixed point
            // exact: solve(contacts) == reported state.
            const SolveOut final_fk = run_fk(model, z);
            if (final_fk.ok) {
                out.suspension = final_fk.s;
                out.body = final_fk.b;
                out.contacts = contacts;
            }
            out.converged = true;
            break;
        }
    }

    SettleResult& res = out.converged ? out : best;
    const auto& lim = model.params();
    const auto in_range = [](double v, const JointLimits& l) {
        return v >= l.min - 1e-12 && v <= l.max + 1e-12;
    };
    res.limits_exceeded = !in_range(res.suspension.delta_l, lim.delta_limits) ||
                          !in_range(res.suspension.delta_r, lim.delta_limits);
    if (model.is_rocker_bogie()) {
        res.limits_exceeded = res.limits_exceeded ||
                              !in_range(res.suspension.beta_l, lim.beta_limits) ||
                              !in_range(res.suspension.beta_r, lim.beta_limits);
    }
    return res;
}

}  // namespace

std::array<OrientedBox, kWheelCount> wheel_boxes_world(const RoverModel& model,
                                                       const Pose2D& pose) {
    std::array<OrientedBox, kWheelCount> out{};
    const double c = std::cos(pose.psi), s = std::sin(pose.psi);
    for (int w = 0; w < kWheelCount; ++w) {
        const WheelBox& b = model.wheel_boxes()[w];
        out[w].cx = pose.x + c * b.center_x - s * b.center_y;
        out[w].cy = pose.y + s * b.center_x + c * b.center_y;
        out[w].half_x = b.half_x;
        out[w].half_y = b.half_y;
        out[w].psi = pose.psi;
    }
    return out;
}

SettleResult settle(const Dem& dem, const Pose2D& pose, const RoverModel& model,
                    double tolerance, int max_iterations) {
    return settle_impl(dem, pose, model, nullptr, tolerance, max_iterations);
}

SettleResult settle_constrained(const Dem& dem, const Pose2D& pose,
                                const RoverModel& model,
                                const std::array<OrientedBox, kWheelCount>& boxes,
                                double tolerance, int max_iterations) {
    return settle_impl(dem, pose, model, &boxes, tolerance, max_iterations);
}

ExactClearance exact_clearance(const Dem& dem, const Pose2D& pose,
                               const RoverModel& model, const SettleResult& settled) {
    const auto& p = model.params();
    WheelBoxQuery q;
    q.center_x = 0.0;
    q.center_y = 0.0;
    q.dim_x = p.l_p + 2.0 * p.c0 * std::sin(std::abs(settled.body.theta));
    q.dim_y = p.w_p + 2.0 * p.c0 * std::sin(std::abs(settled.body.phi));
    const BoxQueryResult res = minmax_in_box(dem, pose, q);
    ExactClearance out;
    out.status = res.status;
    if (!res.ok()) return out;
    out.clearance = res.range.lo - settled.body.z_p;
    return out;
}

}  // namespace ace
