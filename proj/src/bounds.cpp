#include "ace/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace ace {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kAsinSlop = 1e-12;

/// cos over an interval of absolute angles (cos is decreasing on [0, pi]).
Interval cos_of_abs(const Interval& a) {
    return Interval(std::cos(std::min(a.hi, kPi)), std::cos(a.lo));
}

/// sin over an interval of absolute angles; handles the fold at pi/2.
Interval sin_of_abs(const Interval& a) {
    if (a.hi <= kPi / 2.0) return Interval(std::sin(a.lo), std::sin(a.hi));
    const double s_lo = std::sin(a.lo);
    const double s_hi = std::sin(std::min(a.hi, kPi));
    return Interval(std::min(s_lo, s_hi), 1.0);
}

/// sin over an interval of signed angles clamped to [-pi/2, pi/2] where it
/// is monotone; propagated attitudes stay far inside this range.
Interval sin_of_signed(const Interval& a) {
    const double lo = std::clamp(a.lo, -kPi / 2.0, kPi / 2.0);
    const double hi = std::clamp(a.hi, -kPi / 2.0, kPi / 2.0);
    return Interval(std::sin(lo), std::sin(hi));
}

enum class PropStatus { Ok, Infeasible, AttitudeDomain };

/// Non-throwing kappa for the hot evaluation path.
double kappa_checked(double z_a, double z_b, const TriangleParams& tri, bool& ok) {
    const double u = (z_a - z_b) * tri.inv_l_ab;
    if (std::abs(u) > 1.0 + kAsinSlop) {
        ok = false;
        return 0.0;
    }
    return tri.phi_a + std::asin(std::clamp(u, -1.0, 1.0));
}

double roll_asin_checked(double arg, bool& ok) {
    if (std::abs(arg) > 1.0 + kAsinSlop) {
        ok = false;
        return 0.0;
    }
    return std::asin(std::clamp(arg, -1.0, 1.0));
}

double roll_asin(double arg, double track) {
    bool ok = true;
    const double v = roll_asin_checked(arg, ok);
    if (!ok) {
        std::ostringstream os;
        os << "roll bound: joint height spread exceeds differential track " << track;
        throw AttitudeDomainError(os.str());
    }
    return v;
}

struct SideBounds {
    Interval kd;   // rocker link angle
    Interval kb;   // bogie link angle (rocker-bogie only)
    Interval z_b;  // bogie joint height
    Interval z_d;  // differential joint height
    Interval beta;
};

/// Per-side chain evaluated at its monotone endpoint pairings. The closed
/// form is only sound where the joint-height map is monotone, so link
/// angles outside the model's verified envelope reject the configuration.
bool side_bounds(const Interval& f, const Interval& m, const Interval& r,
                 const RoverModel& model, SideBounds& s) {
    const auto& p = model.params();
    constexpr double kEnvSlop = 1e-9;
    const auto in_env = [](double lo, double hi, const JointLimits& env) {
        return lo >= env.min - kEnvSlop && hi <= env.max + kEnvSlop;
    };
    bool ok = true;
    if (model.is_rocker_bogie()) {
        const auto& trib = model.bogie_triangle();
        const double kb_lo = kappa_checked(m.lo, r.hi, trib, ok);
        const double kb_hi = kappa_checked(m.hi, r.lo, trib, ok);
        // Joint height pairs low-with-low / high-with-high: monotone regime.
        const double zb_lo = m.lo - p.l_bm * std::sin(kappa_checked(m.lo, r.lo, trib, ok));
        const double zb_hi = m.hi - p.l_bm * std::sin(kappa_checked(m.hi, r.hi, trib, ok));
        if (!ok || !in_env(kb_lo, kb_hi, model.kappa_b_envelope())) return false;
        const auto& trid = model.rocker_triangle();
        const double kd_lo = kappa_checked(f.lo, zb_hi, trid, ok);
        const double kd_hi = kappa_checked(f.hi, zb_lo, trid, ok);
        const double zd_lo = f.lo - p.l_df * std::sin(kappa_checked(f.lo, zb_lo, trid, ok));
        const double zd_hi = f.hi - p.l_df * std::sin(kappa_checked(f.hi, zb_hi, trid, ok));
        if (!ok || !in_env(kd_lo, kd_hi, model.kappa_d_envelope())) return false;
        s.kb = Interval(kb_lo, kb_hi);
        s.z_b = Interval(zb_lo, zb_hi);
        s.kd = Interval(kd_lo, kd_hi);
        s.z_d = Interval(zd_lo, zd_hi);
        const double cal = model.kappa_b0() - model.kappa_d0();
        s.beta = Interval(s.kd.lo - s.kb.hi + cal, s.kd.hi - s.kb.lo + cal);
    } else {
        const auto& trid = model.rocker_triangle();
        const double kd_lo = kappa_checked(f.lo, r.hi, trid, ok);
        const double kd_hi = kappa_checked(f.hi, r.lo, trid, ok);
        const double zd_lo = f.lo - p.l_df * std::sin(kappa_checked(f.lo, r.lo, trid, ok));
        const double zd_hi = f.hi - p.l_df * std::sin(kappa_checked(f.hi, r.hi, trid, ok));
        if (!ok || !in_env(kd_lo, kd_hi, model.kappa_d_envelope())) return false;
        s.kd = Interval(kd_lo, kd_hi);
        s.z_d = Interval(zd_lo, zd_hi);
        s.kb = Interval::exact(0.0);
        s.z_b = Interval::exact(0.0);
        s.beta = Interval::exact(0.0);
    }
    return true;
}

struct BodyTerms {
    Interval phi, theta, abs_phi, abs_theta, z_o, z_p;
};

bool body_bounds(const Interval& kd_l, const Interval& kd_r,
                 const Interval& z_d_l, const Interval& z_d_r,
                 const RoverModel& model, BodyTerms& b) {
    const auto& p = model.params();
    bool ok = true;
    const double track = 2.0 * p.y_od;
    b.phi = Interval(roll_asin_checked((z_d_r.lo - z_d_l.hi) / track, ok),
                     roll_asin_checked((z_d_r.hi - z_d_l.lo) / track, ok));
    if (!ok) return false;
    b.theta = Interval(model.kappa_d0() - 0.5 * (kd_l.hi + kd_r.hi),
                       model.kappa_d0() - 0.5 * (kd_l.lo + kd_r.lo));
    b.abs_phi = abs_interval(b.phi);
    b.abs_theta = abs_interval(b.theta);

    const Interval ct = cos_of_abs(b.abs_theta);
    const Interval cp = cos_of_abs(b.abs_phi);
    const Interval cc(ct.lo * cp.lo, ct.hi * cp.hi);
    const Interval st = sin_of_signed(b.theta);

    // x_od * sin(theta) * cos(phi): bilinear in (sin, cos), extremes at the
    // corners; valid for either sign of x_od.
    double t_lo = std::numeric_limits<double>::infinity();
    double t_hi = -std::numeric_limits<double>::infinity();
    for (const double s : {st.lo, st.hi}) {
        for (const double c : {cp.lo, cp.hi}) {
            const double v = p.x_od * s * c;
            t_lo = std::min(t_lo, v);
            t_hi = std::max(t_hi, v);
        }
    }
    const double mean_lo = 0.5 * (z_d_l.lo + z_d_r.lo);
    const double mean_hi = 0.5 * (z_d_l.hi + z_d_r.hi);
    b.z_o = Interval(mean_lo + t_lo + p.z_od * cc.lo - model.z_o_cal(),
                     mean_hi + t_hi + p.z_od * cc.hi - model.z_o_cal());

    const Interval sta = sin_of_abs(b.abs_theta);
    const Interval spa = sin_of_abs(b.abs_phi);
    b.z_p = Interval(b.z_o.lo - p.c0 * cc.hi + 0.5 * p.l_p * sta.lo * cp.lo +
                         0.5 * p.w_p * spa.lo,
                     b.z_o.hi - p.c0 * cc.lo + 0.5 * p.l_p * sta.hi * cp.hi +
                         0.5 * p.w_p * spa.hi);
    return true;
}

PropStatus propagate_impl(const WheelIntervals& w, const RoverModel& model,
                          StateBounds& out) {
    SideBounds left, right;
    if (!side_bounds(w.fl, w.ml, w.rl, model, left) ||
        !side_bounds(w.fr, w.mr, w.rr, model, right)) {
        return PropStatus::Infeasible;
    }
    out.z_b_l = left.z_b;
    out.z_b_r = right.z_b;
    out.z_d_l = left.z_d;
    out.z_d_r = right.z_d;
    out.beta_l = left.beta;
    out.beta_r = right.beta;
    out.delta = Interval(0.5 * (right.kd.lo - left.kd.hi),
                         0.5 * (right.kd.hi - left.kd.lo));

    BodyTerms b;
    if (!body_bounds(left.kd, right.kd, left.z_d, right.z_d, model, b)) {
        return PropStatus::AttitudeDomain;
    }
    out.phi = b.phi;
    out.theta = b.theta;
    out.abs_phi = b.abs_phi;
    out.abs_theta = b.abs_theta;
    out.z_o = b.z_o;
    out.z_p = b.z_p;

    int count = 0;
    const auto wheels = model.active_wheels(count);
    for (int i = 0; i < count; ++i) {
        out.wheel_drop = std::max(out.wheel_drop, w.at(wheels[i]).width());
    }
    return PropStatus::Ok;
}

}  // namespace

SafetyThresholds default_thresholds(const RoverModel& model) {
    SafetyThresholds t;
    t.delta_range = model.params().delta_limits;
    t.beta_range = model.is_rocker_bogie() ? model.params().beta_limits
                                           : JointLimits{0.0, 0.0};
    t.max_wheel_drop = model.params().wheel_radius;
    return t;
}

WheelIntervalsResult wheel_height_intervals(const Dem& dem, const Pose2D& pose,
                                            const RoverModel& model, double epsilon) {
    WheelIntervalsResult out;
    out.intervals.epsilon = epsilon;
    int count = 0;
    const auto wheels = model.active_wheels(count);
    static const char* kNames[] = {"front-left", "front-right", "middle-left",
                                   "middle-right", "rear-left", "rear-right"};
    const double c = std::cos(pose.psi), s = std::sin(pose.psi);
    for (int i = 0; i < count; ++i) {
        const int w = wheels[i];
        const WheelBox& box = model.wheel_boxes()[w];
        OrientedBox ob{pose.x + c * box.center_x - s * box.center_y,
                       pose.y + s * box.center_x + c * box.center_y,
                       box.half_x, box.half_y, pose.psi};
        const BoxQueryResult res = minmax_in_oriented_box(dem, ob, c, s);
        if (!res.ok()) {
            out.fail_status = res.status;
            out.reason = std::string(kNames[w]) + " wheel box " +
                         (res.status == QueryStatus::Unknown ? "covers unknown terrain"
                                                             : "outside the map");
            return out;
        }
        out.intervals.at(w) = Interval(res.range.lo - epsilon, res.range.hi + epsilon);
    }
    out.ok = true;
    return out;
}

StateBounds propagate_bounds(const WheelIntervals& w, const RoverModel& model) {
    StateBounds out;
    switch (propagate_impl(w, model, out)) {
        case PropStatus::Infeasible:
            throw KinematicInfeasible(
                "wheel interval corner exceeds suspension link reach");
        case PropStatus::AttitudeDomain:
            throw AttitudeDomainError(
                "joint height spread exceeds the differential track");
        default:
            return out;
    }
}

StateBounds bounds_via_extremes(const WheelIntervals& w, const RoverModel& model) {
    const auto& p = model.params();
    struct Corner {
        double kd, z_d, kb, z_b, beta;
    };
    // Exact per-side chain at the 8 extreme wheel-height combinations.
    const auto side_corners = [&](const Interval& f, const Interval& m,
                                  const Interval& r) {
        std::array<Corner, 8> corners{};
        int n = 0;
        for (const double zf : {f.lo, f.hi}) {
            for (const double zm : {m.lo, m.hi}) {
                for (const double zr : {r.lo, r.hi}) {
                    Corner c{};
                    if (model.is_rocker_bogie()) {
                        c.kb = kappa(zm, zr, model.bogie_triangle());
                        c.z_b = zm - p.l_bm * std::sin(c.kb);
                        c.kd = kappa(zf, c.z_b, model.rocker_triangle());
                        c.beta = c.kd - c.kb - model.kappa_d0() + model.kappa_b0();
                    } else {
                        c.kd = kappa(zf, zr, model.rocker_triangle());
                    }
                    c.z_d = zf - p.l_df * std::sin(c.kd);
                    corners[n++] = c;
                }
            }
        }
        return corners;
    };
    const auto left = side_corners(w.fl, w.ml, w.rl);
    const auto right = side_corners(w.fr, w.mr, w.rr);

    StateBounds out;
    bool first = true;
    const auto fold = [&first](Interval& acc, double v) {
        if (first) {
            acc = Interval::exact(v);
        } else {
            acc = hull(acc, Interval::exact(v));
        }
    };
    for (const auto& c : left) {
        fold(out.z_b_l, c.z_b);
        fold(out.z_d_l, c.z_d);
        fold(out.beta_l, c.beta);
        first = false;
    }
    first = true;
    for (const auto& c : right) {
        fold(out.z_b_r, c.z_b);
        fold(out.z_d_r, c.z_d);
        fold(out.beta_r, c.beta);
        first = false;
    }

    first = true;
    for (const auto& cl : left) {
        for (const auto& cr : right) {
            const double delta = 0.5 * (cr.kd - cl.kd);
            const double roll =
                roll_asin((cr.z_d - cl.z_d) / (2.0 * p.y_od), 2.0 * p.y_od);
            const double pitch = model.kappa_d0() - 0.5 * (cl.kd + cr.kd);
            BodyState body;
            body.phi = roll;
            body.theta = pitch;
            body.z_o = 0.5 * (cl.z_d + cr.z_d) +
                       p.x_od * std::sin(pitch) * std::cos(roll) +
                       p.z_od * std::cos(pitch) * std::cos(roll) - model.z_o_cal();
            const double z_p = pan_lowest_height(body, model);
            fold(out.delta, delta);
            fold(out.phi, roll);
            fold(out.theta, pitch);
            fold(out.z_o, body.z_o);
            fold(out.z_p, z_p);
            first = false;
        }
    }
    out.abs_phi = abs_interval(out.phi);
    out.abs_theta = abs_interval(out.theta);

    int count = 0;
    const auto wheels = model.active_wheels(count);
    for (int i = 0; i < count; ++i) {
        out.wheel_drop = std::max(out.wheel_drop, w.at(wheels[i]).width());
    }
    return out;
}

ClearanceResult clearance_interval(const StateBounds& bounds, const Dem& dem,
                                   const Pose2D& pose, const RoverModel& model,
                                   double epsilon) {
    const auto& p = model.params();
    const Interval sta = sin_of_abs(bounds.abs_theta);
    const Interval spa = sin_of_abs(bounds.abs_phi);
    const double c = std::cos(pose.psi), s = std::sin(pose.psi);
    OrientedBox ob{pose.x, pose.y, 0.5 * p.l_p + p.c0 * sta.hi,
                   0.5 * p.w_p + p.c0 * spa.hi, pose.psi};
    const BoxQueryResult res = minmax_in_oriented_box(dem, ob, c, s);
    ClearanceResult out;
    out.status = res.status;
    if (!res.ok()) return out;
    out.ground = Interval(res.range.lo - epsilon, res.range.hi + epsilon);
    out.clearance = Interval(out.ground.lo - bounds.z_p.hi, out.ground.lo - bounds.z_p.lo);
    return out;
}

Evaluation evaluate_pose(const Dem& dem, const Pose2D& pose, const RoverModel& model,
                         const SafetyThresholds& thresholds, double epsilon) {
    Evaluation ev;
    auto wres = wheel_height_intervals(dem, pose, model, epsilon);
    if (!wres.ok) {
        ev.verdict.overall = SafetyVerdict::Overall::Unevaluatable;
        ev.verdict.reason = wres.reason;
        return ev;
    }
    ev.wheels = wres.intervals;
    ev.wheels_valid = true;

    double drop = 0.0;
    int count = 0;
    const auto wheels = model.active_wheels(count);
    for (int i = 0; i < count; ++i) {
        drop = std::max(drop, ev.wheels.at(wheels[i]).width());
    }

    switch (propagate_impl(ev.wheels, model, ev.bounds)) {
        case PropStatus::Infeasible:
            ev.verdict.overall = SafetyVerdict::Overall::Unsafe;
            ev.verdict.wheel_drop = {false, drop};
            ev.verdict.reason = "kinematically infeasible extreme configuration";
            return ev;
        case PropStatus::AttitudeDomain:
            ev.verdict.overall = SafetyVerdict::Overall::Unsafe;
            ev.verdict.tilt = {false, kPi / 2.0};
            ev.verdict.reason = "attitude bound outside the arcsin domain";
            return ev;
        default:
            break;
    }
    ev.bounds_valid = true;

    const ClearanceResult cres =
        clearance_interval(ev.bounds, dem, pose, model, epsilon);
    if (cres.status != QueryStatus::Ok) {
        ev.verdict.overall = SafetyVerdict::Overall::Unevaluatable;
        ev.verdict.reason = cres.status == QueryStatus::Unknown
                                ? "pan region covers unknown terrain"
                                : "pan region outside the map";
        ev.bounds_valid = false;
        return ev;
    }
    ev.bounds.clearance = cres.clearance;

    SafetyVerdict& v = ev.verdict;
    v.clearance = {ev.bounds.clearance.lo >= thresholds.min_clearance,
                   ev.bounds.clearance.lo};
    const double tilt_cos = std::clamp(
        std::cos(std::min(ev.bounds.abs_phi.hi, kPi)) *
            std::cos(std::min(ev.bounds.abs_theta.hi, kPi)),
        -1.0, 1.0);
    const double tilt_worst = std::acos(tilt_cos);
    v.tilt = {tilt_worst <= thresholds.max_tilt, tilt_worst};

    const auto overshoot = [](const Interval& x, const JointLimits& range) {
        return std::max(x.hi - range.max, range.min - x.lo);
    };
    double worst_over = overshoot(ev.bounds.delta, thresholds.delta_range);
    worst_over = std::max(worst_over,
                          overshoot(negate(ev.bounds.delta), thresholds.delta_range));
    if (model.is_rocker_bogie()) {
        worst_over = std::max(worst_over, overshoot(ev.bounds.beta_l, thresholds.beta_range));
        worst_over = std::max(worst_over, overshoot(ev.bounds.beta_r, thresholds.beta_range));
    }
    v.suspension = {worst_over <= 0.0, worst_over};
    v.wheel_drop = {drop <= thresholds.max_wheel_drop, drop};

    const bool safe = v.clearance.pass && v.tilt.pass && v.suspension.pass && v.wheel_drop.pass;
    v.overall = safe ? SafetyVerdict::Overall::Safe : SafetyVerdict::Overall::Unsafe;
    if (!safe) {
        std::string why;
        if (!v.clearance.pass) why += "clearance ";
        if (!v.tilt.pass) why += "tilt ";
        if (!v.suspension.pass) why += "suspension ";
        if (!v.wheel_drop.pass) why += "wheel-drop ";
        why.pop_back();
        v.reason = why + " threshold violated";
    }
    return ev;
}

}  // namespace ace
