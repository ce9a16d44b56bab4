#include "ace/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace ace {

namespace {

constexpr double kAsinSlop = 1e-12;  // numerical slop, not a modeling fudge
constexpr double kPi = 3.14159265358979323846;

double guarded_asin(double u, const char* context) {
    if (u > 1.0 + kAsinSlop || u < -1.0 - kAsinSlop) {
        std::ostringstream os;
        os << context << ": arcsin argument " << u << " outside [-1, 1]";
        throw KinematicInfeasible(os.str());
    }
    return std::asin(std::clamp(u, -1.0, 1.0));
}

/// Resolves a suspension triangle from its joint-centric description:
/// two link lengths meeting at the joint C and the apex angle between them.
TriangleParams triangle_from_apex(double l_ca, double l_cb, double phi_c) {
    const double l_ab = std::sqrt(l_ca * l_ca + l_cb * l_cb -
                                  2.0 * l_ca * l_cb * std::cos(phi_c));
    if (!(l_ab > 0.0)) throw ModelError("degenerate suspension triangle");
    double cos_a = (l_ca * l_ca + l_ab * l_ab - l_cb * l_cb) / (2.0 * l_ca * l_ab);
    cos_a = std::clamp(cos_a, -1.0, 1.0);
    return TriangleParams(l_ca, l_ab, std::acos(cos_a));
}

void require(bool cond, const std::string& what) {
    if (!cond) throw ModelError("rover model: " + what);
}

}  // namespace

double kappa(double z_a, double z_b, const TriangleParams& tri) {
    const double u = (z_a - z_b) * tri.inv_l_ab;
    if (std::abs(u) > 1.0 + kAsinSlop) {
        std::ostringstream os;
        os << "kappa: height difference " << (z_a - z_b) << " exceeds link length "
           << tri.l_ab;
        throw KinematicInfeasible(os.str());
    }
    return tri.phi_a + std::asin(std::clamp(u, -1.0, 1.0));
}

double tri_height(double z_a, double z_b, const TriangleParams& tri) {
    return z_a - tri.l_ca * std::sin(kappa(z_a, z_b, tri));
}

RoverModel::RoverModel(const RoverParams& p) : params_(p) {
    require(p.l_df > 0.0, "l_df must be > 0");
    require(p.l_db > 0.0, "l_db must be > 0");
    require(p.phi_f > 0.0 && p.phi_f < kPi, "phi_f must be in (0, pi)");
    require(p.y_od > 0.0, "y_od must be > 0");
    require(p.c0 > 0.0, "c0 must be > 0");
    require(p.w_p > 0.0 && p.l_p > 0.0, "pan dimensions must be > 0");
    require(p.wheel_box_x > 0.0 && p.wheel_box_y > 0.0, "wheel box dims must be > 0");
    require(p.wheel_radius > 0.0, "wheel_radius must be > 0");
    require(p.delta_limits.min <= p.delta_limits.max, "delta limits inverted");
    require(p.max_tilt >= 0.0 && p.max_tilt < kPi / 2.0, "max_tilt must be in [0, pi/2)");
    if (p.variant == RoverVariant::RockerBogie) {
        require(p.l_bm > 0.0, "l_bm must be > 0");
        require(p.l_br > 0.0, "l_br must be > 0");
        require(p.phi_b > 0.0 && p.phi_b < kPi, "phi_b must be in (0, pi)");
        require(p.beta_limits.min <= p.beta_limits.max, "beta limits inverted");
    }

    tri_rocker_ = triangle_from_apex(p.l_df, p.l_db, p.phi_f);
    if (p.variant == RoverVariant::RockerBogie) {
        tri_bogie_ = triangle_from_apex(p.l_bm, p.l_br, p.phi_b);
    }
    calibrate();
    derive_wheel_layout();
    derive_wheel_boxes();
}

void RoverModel::calibrate() {
    if (is_rocker_bogie()) {
        kappa_b0_ = tri_bogie_.phi_a;  // kappa_b(0, 0)
        z_b_flat_ = -params_.l_bm * std::sin(kappa_b0_);
        kappa_d0_ = kappa(0.0, z_b_flat_, tri_rocker_);
    } else {
        kappa_b0_ = 0.0;
        z_b_flat_ = 0.0;
        kappa_d0_ = tri_rocker_.phi_a;  // kappa_d(0, 0)
    }
    z_d_flat_ = -params_.l_df * std::sin(kappa_d0_);
    z_o_cal_ = z_d_flat_ + params_.z_od;

    const double delta_span = std::max(std::abs(params_.delta_limits.min),
                                       std::abs(params_.delta_limits.max));
    kappa_d_env_ = {kappa_d0_ - delta_span - params_.max_tilt,
                    kappa_d0_ + delta_span + params_.max_tilt};
    const double beta_span = std::max(std::abs(params_.beta_limits.min),
                                      std::abs(params_.beta_limits.max));
    kappa_b_env_ = {kappa_b0_ - beta_span - params_.max_tilt,
                    kappa_b0_ + beta_span + params_.max_tilt};
}

void RoverModel::derive_wheel_layout() {
    const auto& p = params_;
    // Left side; right mirrors in y. The differential joint is rigid to the
    // body; link angles below are body-frame angles at zero suspension.
    const double jx = p.x_od;
    const double fx = jx + p.l_df * std::cos(kappa_d0_);
    double mx = 0.0, rx = 0.0;
    if (is_rocker_bogie()) {
        const double bx = jx + p.l_db * std::cos(kappa_d0_ + p.phi_f);
        mx = bx + p.l_bm * std::cos(kappa_b0_);
        rx = bx + p.l_br * std::cos(kappa_b0_ + p.phi_b);
    } else {
        rx = jx + p.l_db * std::cos(kappa_d0_ + p.phi_f);
    }
    wheel_nominal_[kFrontLeft] = {fx, -p.y_od, 0.0};
    wheel_nominal_[kFrontRight] = {fx, p.y_od, 0.0};
    wheel_nominal_[kMiddleLeft] = {mx, -p.y_od, 0.0};
    wheel_nominal_[kMiddleRight] = {mx, p.y_od, 0.0};
    wheel_nominal_[kRearLeft] = {rx, -p.y_od, 0.0};
    wheel_nominal_[kRearRight] = {rx, p.y_od, 0.0};
}

std::array<Vec3, kWheelCount> RoverModel::wheel_positions(double delta_l,
                                                          double beta_l,
                                                          double beta_r) const {
    const auto& p = params_;
    std::array<Vec3, kWheelCount> out = wheel_nominal_;
    for (int side = 0; side < 2; ++side) {
        const double sgn_y = side == 0 ? -1.0 : 1.0;
        const double delta = side == 0 ? delta_l : -delta_l;
        const double beta = side == 0 ? beta_l : beta_r;
        const double rho_d = kappa_d0_ - delta;
        const Vec3 joint{p.x_od, sgn_y * p.y_od, z_d_flat_};
        const Vec3 front{joint.x + p.l_df * std::cos(rho_d), joint.y,
                         joint.z + p.l_df * std::sin(rho_d)};
        out[side == 0 ? kFrontLeft : kFrontRight] = front;
        if (is_rocker_bogie()) {
            const Vec3 bj{joint.x + p.l_db * std::cos(rho_d + p.phi_f), joint.y,
                          joint.z + p.l_db * std::sin(rho_d + p.phi_f)};
            const double rho_b = kappa_b0_ - delta - beta;
            out[side == 0 ? kMiddleLeft : kMiddleRight] =
                Vec3{bj.x + p.l_bm * std::cos(rho_b), bj.y,
                     bj.z + p.l_bm * std::sin(rho_b)};
            out[side == 0 ? kRearLeft : kRearRight] =
                Vec3{bj.x + p.l_br * std::cos(rho_b + p.phi_b), bj.y,
                     bj.z + p.l_br * std::sin(rho_b + p.phi_b)};
        } else {
            out[side == 0 ? kRearLeft : kRearRight] =
                Vec3{joint.x + p.l_db * std::cos(rho_d + p.phi_f), joint.y,
                     joint.z + p.l_db * std::sin(rho_d + p.phi_f)};
        }
    }
    return out;
}

std::array<int, kWheelCount> RoverModel::active_wheels(int& count) const {
    if (is_rocker_bogie()) {
        count = 6;
        return {kFrontLeft, kFrontRight, kMiddleLeft, kMiddleRight, kRearLeft, kRearRight};
    }
    count = 4;
    return {kFrontLeft, kFrontRight, kRearLeft, kRearRight, 0, 0};
}

void RoverModel::derive_wheel_boxes() {
    const auto& p = params_;
    // Sweep the suspension over its limits and record worst in-plane wheel
    // displacement; fold in a tilt-induced ground-projection shift.
    constexpr int kSteps = 41;
    std::array<double, kWheelCount> max_dx{};
    std::array<double, kWheelCount> max_dz{};
    const double dmin = p.delta_limits.min, dmax = p.delta_limits.max;
    const double bmin = is_rocker_bogie() ? p.beta_limits.min : 0.0;
    const double bmax = is_rocker_bogie() ? p.beta_limits.max : 0.0;
    for (int i = 0; i < kSteps; ++i) {
        const double delta = dmin + (dmax - dmin) * i / (kSteps - 1);
        for (int j = 0; j < kSteps; ++j) {
            const double beta = bmin + (bmax - bmin) * j / (kSteps - 1);
            const auto pos = wheel_positions(delta, beta, beta);
            for (int w = 0; w < kWheelCount; ++w) {
                max_dx[w] = std::max(max_dx[w], std::abs(pos[w].x - wheel_nominal_[w].x));
                max_dz[w] = std::max(max_dz[w], std::abs(pos[w].z - wheel_nominal_[w].z));
            }
        }
    }
    const double sin_tilt = std::sin(p.max_tilt);
    for (int w = 0; w < kWheelCount; ++w) {
        // Tilt sweeps the contact patch by at most r*sin(tilt) about the
        // ground point, plus a half-weight suspension z-excursion cross term.
        const double tilt_shift = sin_tilt * (p.wheel_radius + 0.5 * max_dz[w]);
        wheel_boxes_[w].center_x = wheel_nominal_[w].x;
        wheel_boxes_[w].center_y = wheel_nominal_[w].y;
        wheel_boxes_[w].half_x = 0.5 * p.wheel_box_x + max_dx[w] + tilt_shift;
        wheel_boxes_[w].half_y = 0.5 * p.wheel_box_y + tilt_shift;
    }
}

std::pair<SuspensionState, BodyState> solve_rocker_bogie(const WheelHeights& h,
                                                         const RoverModel& m) {
    if (!m.is_rocker_bogie()) {
        throw ModelError("solve_rocker_bogie called on a pure rocker model");
    }
    const auto& p = m.params();
    const double zf[2] = {h.fl, h.fr};
    const double zm[2] = {h.ml, h.mr};
    const double zr[2] = {h.rl, h.rr};
    double kb[2], kd[2], zb[2], zd[2];
    for (int i = 0; i < 2; ++i) {
        kb[i] = kappa(zm[i], zr[i], m.bogie_triangle());
        zb[i] = zm[i] - p.l_bm * std::sin(kb[i]);
        kd[i] = kappa(zf[i], zb[i], m.rocker_triangle());
        zd[i] = zf[i] - p.l_df * std::sin(kd[i]);
    }

    SuspensionState s;
    s.z_b_l = zb[0];
    s.z_b_r = zb[1];
    s.z_d_l = zd[0];
    s.z_d_r = zd[1];
    s.delta_l = 0.5 * (kd[1] - kd[0]);
    s.delta_r = -s.delta_l;
    s.beta_l = kd[0] - kb[0] - m.kappa_d0() + m.kappa_b0();
    s.beta_r = kd[1] - kb[1] - m.kappa_d0() + m.kappa_b0();

    BodyState b;
    const double roll_arg = (zd[1] - zd[0]) / (2.0 * p.y_od);
    if (std::abs(roll_arg) > 1.0 + kAsinSlop) {
        std::ostringstream os;
        os << "roll: joint height difference " << (zd[1] - zd[0])
           << " exceeds differential track " << 2.0 * p.y_od;
        throw AttitudeDomainError(os.str());
    }
    b.phi = std::asin(std::clamp(roll_arg, -1.0, 1.0));
    b.theta = m.kappa_d0() - 0.5 * (kd[0] + kd[1]);
    b.z_o = 0.5 * (zd[0] + zd[1]) + p.x_od * std::sin(b.theta) * std::cos(b.phi) +
            p.z_od * std::cos(b.theta) * std::cos(b.phi) - m.z_o_cal();
    b.z_p = pan_lowest_height(b, m);
    return {s, b};
}

std::pair<SuspensionState, BodyState> solve_rocker(double z_fl, double z_fr,
                                                   double z_rl, double z_rr,
                                                   const RoverModel& m) {
    if (m.is_rocker_bogie()) {
        throw ModelError("solve_rocker called on a rocker-bogie model");
    }
    const auto& p = m.params();
    const double zf[2] = {z_fl, z_fr};
    const double zr[2] = {z_rl, z_rr};
    double kd[2], zd[2];
    for (int i = 0; i < 2; ++i) {
        kd[i] = kappa(zf[i], zr[i], m.rocker_triangle());
        zd[i] = zf[i] - p.l_df * std::sin(kd[i]);
    }

    SuspensionState s;
    s.z_d_l = zd[0];
    s.z_d_r = zd[1];
    s.delta_l = 0.5 * (kd[1] - kd[0]);
    s.delta_r = -s.delta_l;

    BodyState b;
    b.phi = guarded_asin((zd[1] - zd[0]) / (2.0 * p.y_od), "roll");
    b.theta = m.kappa_d0() - 0.5 * (kd[0] + kd[1]);
    b.z_o = 0.5 * (zd[0] + zd[1]) + p.x_od * std::sin(b.theta) * std::cos(b.phi) +
            p.z_od * std::cos(b.theta) * std::cos(b.phi) - m.z_o_cal();
    b.z_p = pan_lowest_height(b, m);
    return {s, b};
}

double pan_lowest_height(const BodyState& body, const RoverModel& model) {
    const auto& p = model.params();
    const double ct = std::cos(body.theta);
    const double cp = std::cos(body.phi);
    return body.z_o - p.c0 * ct * cp +
           0.5 * p.l_p * std::sin(std::abs(body.theta)) * cp +
           0.5 * p.w_p * std::sin(std::abs(body.phi));
}

namespace {

void check_triangle_monotone(const TriangleParams& tri, double kappa0,
                             double slack, const char* name) {
    constexpr int kSamples = 4001;
    const double lo = kappa0 - slack;
    const double hi = kappa0 + slack;
    for (int i = 0; i < kSamples; ++i) {
        const double k = lo + (hi - lo) * i / (kSamples - 1);
        const double e = k - tri.phi_a;  // asin of the height ratio
        std::ostringstream os;
        if (std::abs(e) >= kPi / 2.0) {
            os << name << ": mechanical limits exceed link reach at kappa=" << k
               << " (limit span " << slack << " rad)";
            throw NonMonotoneConfiguration(os.str());
        }
        if (std::cos(k) <= 0.0) {
            os << name << ": joint height not monotone in the far wheel at kappa="
               << k << " (link past vertical; limit span " << slack << " rad)";
            throw NonMonotoneConfiguration(os.str());
        }
        if (tri.l_ca * std::cos(k) >= tri.l_ab * std::cos(e)) {
            os << name << ": joint height not monotone in the near wheel at kappa="
               << k << " (limit span " << slack << " rad)";
            throw NonMonotoneConfiguration(os.str());
        }
    }
}

}  // namespace

void assert_monotone_regime(const RoverModel& model) {
    const JointLimits& denv = model.kappa_d_envelope();
    check_triangle_monotone(model.rocker_triangle(), 0.5 * (denv.min + denv.max),
                            0.5 * (denv.max - denv.min), "rocker triangle");
    if (model.is_rocker_bogie()) {
        const JointLimits& benv = model.kappa_b_envelope();
        check_triangle_monotone(model.bogie_triangle(), 0.5 * (benv.min + benv.max),
                                0.5 * (benv.max - benv.min), "bogie triangle");
    }
}

namespace {

std::map<std::string, std::string> parse_key_values(std::istream& in) {
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r\n");
            if (b == std::string::npos) return std::string();
            const auto e = s.find_last_not_of(" \t\r\n");
            return s.substr(b, e - b + 1);
        };
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ModelError("rover model: malformed line " + std::to_string(lineno));
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty()) {
            throw ModelError("rover model: empty key or value on line " +
                             std::to_string(lineno));
        }
        if (!kv.emplace(key, val).second) {
            throw ModelError("rover model: duplicate key '" + key + "'");
        }
    }
    return kv;
}

double take_number(std::map<std::string, std::string>& kv, const std::string& key) {
    const auto it = kv.find(key);
    if (it == kv.end()) throw ModelError("rover model: missing key '" + key + "'");
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(it->second, &pos);
    } catch (const std::exception&) {
        throw ModelError("rover model: bad number for '" + key + "'");
    }
    if (pos != it->second.size()) {
        throw ModelError("rover model: bad number for '" + key + "'");
    }
    if (!std::isfinite(v)) {
        throw ModelError("rover model: non-finite value for '" + key + "'");
    }
    kv.erase(it);
    return v;
}

}  // namespace

RoverModel load_rover_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ModelError("rover model: cannot open '" + path + "'");
    auto kv = parse_key_values(in);

    RoverParams p;
    const auto vit = kv.find("variant");
    if (vit == kv.end()) throw ModelError("rover model: missing key 'variant'");
    if (vit->second == "rocker-bogie") {
        p.variant = RoverVariant::RockerBogie;
    } else if (vit->second == "rocker") {
        p.variant = RoverVariant::Rocker;
    } else {
        throw ModelError("rover model: unknown variant '" + vit->second + "'");
    }
    kv.erase(vit);

    p.l_df = take_number(kv, "l_df");
    p.l_db = take_number(kv, "l_db");
    p.phi_f = take_number(kv, "phi_f");
    if (p.variant == RoverVariant::RockerBogie) {
        p.l_bm = take_number(kv, "l_bm");
        p.l_br = take_number(kv, "l_br");
        p.phi_b = take_number(kv, "phi_b");
        p.beta_limits.min = take_number(kv, "beta_min");
        p.beta_limits.max = take_number(kv, "beta_max");
    }
    p.x_od = take_number(kv, "x_od");
    p.y_od = take_number(kv, "y_od");
    p.z_od = take_number(kv, "z_od");
    p.c0 = take_number(kv, "c0");
    p.w_p = take_number(kv, "w_p");
    p.l_p = take_number(kv, "l_p");
    p.wheel_box_x = take_number(kv, "wheel_box_x");
    p.wheel_box_y = take_number(kv, "wheel_box_y");
    p.wheel_radius = take_number(kv, "wheel_radius");
    p.delta_limits.min = take_number(kv, "delta_min");
    p.delta_limits.max = take_number(kv, "delta_max");
    p.max_tilt = take_number(kv, "max_tilt");

    if (!kv.empty()) {
        throw ModelError("rover model: unknown key '" + kv.begin()->first + "'");
    }
    if (!(p.delta_limits.min < p.delta_limits.max)) {
        throw ModelError("rover model: delta limits must satisfy min < max");
    }
    if (p.variant == RoverVariant::RockerBogie &&
        !(p.beta_limits.min < p.beta_limits.max)) {
        throw ModelError("rover model: beta limits must satisfy min < max");
    }

    RoverModel model(p);
    assert_monotone_regime(model);

    // Flat-ground self check: all-zero wheel heights must settle to the zero
    // state by construction of the calibration.
    if (model.is_rocker_bogie()) {
        const auto [s, b] = solve_rocker_bogie(WheelHeights{}, model);
        if (std::abs(s.delta_l) > 1e-9 || std::abs(s.beta_l) > 1e-9 ||
            std::abs(s.beta_r) > 1e-9 || std::abs(b.phi) > 1e-9 ||
            std::abs(b.theta) > 1e-9 || std::abs(b.z_o) > 1e-9) {
            throw ModelError("rover model: flat-ground calibration failed");
        }
    } else {
        const auto [s, b] = solve_rocker(0.0, 0.0, 0.0, 0.0, model);
        if (std::abs(s.delta_l) > 1e-9 || std::abs(b.phi) > 1e-9 ||
            std::abs(b.theta) > 1e-9 || std::abs(b.z_o) > 1e-9) {
            throw ModelError("rover model: flat-ground calibration failed");
        }
    }
    return model;
}

std::string rover_model_to_text(const RoverParams& p) {
    std::ostringstream os;
    os.precision(17);
    os << "# rover model (lengths in m, angles in rad)\n";
    os << "variant = "
       << (p.variant == RoverVariant::RockerBogie ? "rocker-bogie" : "rocker") << "\n";
    os << "l_df = " << p.l_df << "\n";
    os << "l_db = " << p.l_db << "\n";
    os << "phi_f = " << p.phi_f << "\n";
    if (p.variant == RoverVariant::RockerBogie) {
        os << "l_bm = " << p.l_bm << "\n";
        os << "l_br = " << p.l_br << "\n";
        os << "phi_b = " << p.phi_b << "\n";
    }
    os << "x_od = " << p.x_od << "\n";
    os << "y_od = " << p.y_od << "\n";
    os << "z_od = " << p.z_od << "\n";
    os << "c0 = " << p.c0 << "\n";
    os << "w_p = " << p.w_p << "\n";
    os << "l_p = " << p.l_p << "\n";
    os << "wheel_box_x = " << p.wheel_box_x << "\n";
    os << "wheel_box_y = " << p.wheel_box_y << "\n";
    os << "wheel_radius = " << p.wheel_radius << "\n";
    os << "delta_min = " << p.delta_limits.min << "\n";
    os << "delta_max = " << p.delta_limits.max << "\n";
    if (p.variant == RoverVariant::RockerBogie) {
        os << "beta_min = " << p.beta_limits.min << "\n";
        os << "beta_max = " << p.beta_limits.max << "\n";
    }
    os << "max_tilt = " << p.max_tilt << "\n";
    return os.str();
}

}  // namespace ace
