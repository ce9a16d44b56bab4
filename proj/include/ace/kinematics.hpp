#pragma once

#include <array>
#include <string>

#include "ace/errors.hpp"

namespace ace {

// Frames follow the forward-right-down convention: body x forward, y right,
// z down. Greater wheel "height" means the wheel sits lower. Terrain files
// carry up-positive elevation and are negated at the boundary.

/// Triangle linkage A-B-C: two known heights (A, B) determine the third
/// vertex C. Parameterized by the side C->A, the side A->B, and the angle
/// between them at vertex A.
struct TriangleParams {
    double l_ca = 0.0;      // side length C-A [m]
    double l_ab = 0.0;      // side length A-B [m]
    double phi_a = 0.0;     // interior angle at A [rad]
    double inv_l_ab = 0.0;  // cached 1 / l_ab

    TriangleParams() = default;
    TriangleParams(double ca, double ab, double a)
        : l_ca(ca), l_ab(ab), phi_a(a), inv_l_ab(ab > 0.0 ? 1.0 / ab : 0.0) {}
};

enum class RoverVariant { Rocker, RockerBogie };

/// Joint angular limits [rad].
struct JointLimits {
    double min = 0.0;
    double max = 0.0;
};

/// Raw rover description as it appears in a model file. Link lengths are
/// joint-centric: each suspension triangle is given by its two link lengths
/// and the apex angle between them at the joint.
struct RoverParams {
    RoverVariant variant = RoverVariant::RockerBogie;
    double l_df = 0.0;   // differential joint -> front wheel [m]
    double l_db = 0.0;   // differential joint -> bogie joint (rocker-bogie)
                         // or rear wheel (rocker) [m]
    double phi_f = 0.0;  // rocker apex angle at the differential joint [rad]
    double l_bm = 0.0;   // bogie joint -> middle wheel [m]
    double l_br = 0.0;   // bogie joint -> rear wheel [m]
    double phi_b = 0.0;  // bogie apex angle at the bogie joint [rad]
    double x_od = 0.0;   // body origin -> differential joint, forward [m]
    double y_od = 0.0;   // body origin -> differential joint, lateral [m]
    double z_od = 0.0;   // differential joint height above body origin [m]
    double c0 = 0.0;     // nominal ground clearance of the belly pan [m]
    double w_p = 0.0;    // belly pan width [m]
    double l_p = 0.0;    // belly pan length [m]
    double wheel_box_x = 0.0;  // wheel contact footprint, x extent [m]
    double wheel_box_y = 0.0;  // wheel contact footprint, y extent [m]
    double wheel_radius = 0.0;
    JointLimits delta_limits;  // rocker (differential) angle range
    JointLimits beta_limits;   // bogie angle range
    double max_tilt = 0.0;     // attitude envelope for box sizing [rad]
};

/// Wheel heights in z-down meters. The middle pair is unused for the pure
/// rocker variant.
struct WheelHeights {
    double fl = 0.0, fr = 0.0;
    double ml = 0.0, mr = 0.0;
    double rl = 0.0, rr = 0.0;
};

struct SuspensionState {
    double delta_l = 0.0, delta_r = 0.0;  // rocker angles; delta_l == -delta_r
    double beta_l = 0.0, beta_r = 0.0;    // bogie angles (rocker-bogie)
    double z_d_l = 0.0, z_d_r = 0.0;      // differential joint heights
    double z_b_l = 0.0, z_b_r = 0.0;      // bogie joint heights
};

struct BodyState {
    double phi = 0.0;    // roll [rad]
    double theta = 0.0;  // pitch [rad]
    double z_o = 0.0;    // body origin height, z-down [m]
    double z_p = 0.0;    // lowest belly-pan point height, z-down [m]
};

/// Wheel index order used throughout: fl, fr, ml, mr, rl, rr.
enum WheelIndex { kFrontLeft = 0, kFrontRight, kMiddleLeft, kMiddleRight, kRearLeft, kRearRight, kWheelCount };

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;
};

/// Axis-aligned rectangle in the body x-y plane; conservative envelope of
/// one wheel's possible contact locations.
struct WheelBox {
    double center_x = 0.0;
    double center_y = 0.0;
    double half_x = 0.0;
    double half_y = 0.0;
};

/// Calibrated rover model. Construction derives the suspension triangles,
/// flat-ground reference angles, nominal wheel layout, and conservative
/// wheel boxes from the raw parameters. Immutable afterwards.
class RoverModel {
public:
    explicit RoverModel(const RoverParams& params);

    const RoverParams& params() const { return params_; }
    RoverVariant variant() const { return params_.variant; }
    bool is_rocker_bogie() const { return params_.variant == RoverVariant::RockerBogie; }

    const TriangleParams& rocker_triangle() const { return tri_rocker_; }
    const TriangleParams& bogie_triangle() const { return tri_bogie_; }

    double kappa_d0() const { return kappa_d0_; }
    double kappa_b0() const { return kappa_b0_; }
    /// Link-angle ranges over which assert_monotone_regime verified the
    /// joint-height map; bound propagation rejects configurations outside.
    const JointLimits& kappa_d_envelope() const { return kappa_d_env_; }
    const JointLimits& kappa_b_envelope() const { return kappa_b_env_; }
    double z_b_flat() const { return z_b_flat_; }
    double z_d_flat() const { return z_d_flat_; }
    /// Constant subtracted from the raw body-height expression so that the
    /// flat-ground settle sits at z_o = 0 exactly.
    double z_o_cal() const { return z_o_cal_; }

    int wheel_count() const { return is_rocker_bogie() ? 6 : 4; }
    /// Nominal (flat ground, zero suspension) wheel contact centers in the
    /// body frame. Rocker variant leaves the middle entries unused.
    const std::array<Vec3, kWheelCount>& wheel_nominal() const { return wheel_nominal_; }
    const std::array<WheelBox, kWheelCount>& wheel_boxes() const { return wheel_boxes_; }

    /// Body-frame wheel contact positions for the given suspension angles.
    std::array<Vec3, kWheelCount> wheel_positions(double delta_l, double beta_l,
                                                  double beta_r) const;

    /// True wheel indices for the active variant: {fl, fr, ml, mr, rl, rr}
    /// for rocker-bogie, {fl, fr, rl, rr} for rocker.
    std::array<int, kWheelCount> active_wheels(int& count) const;

private:
    RoverParams params_;
    TriangleParams tri_rocker_;
    TriangleParams tri_bogie_;
    double kappa_d0_ = 0.0;
    double kappa_b0_ = 0.0;
    JointLimits kappa_d_env_;
    JointLimits kappa_b_env_;
    double z_b_flat_ = 0.0;
    double z_d_flat_ = 0.0;
    double z_o_cal_ = 0.0;
    std::array<Vec3, kWheelCount> wheel_nominal_{};
    std::array<WheelBox, kWheelCount> wheel_boxes_{};

    void calibrate();
    void derive_wheel_layout();
    void derive_wheel_boxes();
};

/// Angle of link A->C against the horizon given the two base heights.
/// Throws KinematicInfeasible when |z_a - z_b| exceeds the A-B link length.
double kappa(double z_a, double z_b, const TriangleParams& tri);

/// Height of vertex C given the heights of A and B.
double tri_height(double z_a, double z_b, const TriangleParams& tri);

/// Forward kinematics for the 4-wheel rocker suspension.
/// Heights order: (front-left, front-right, rear-left, rear-right).
std::pair<SuspensionState, BodyState> solve_rocker(double z_fl, double z_fr,
                                                   double z_rl, double z_rr,
                                                   const RoverModel& model);

/// Forward kinematics for the 6-wheel rocker-bogie suspension.
std::pair<SuspensionState, BodyState> solve_rocker_bogie(const WheelHeights& heights,
                                                         const RoverModel& model);

/// Height (z-down) of the lowest belly-pan point for an exact body state.
double pan_lowest_height(const BodyState& body, const RoverModel& model);

/// Verifies that the joint-height map stays monotone in both wheel heights
/// over the model's suspension limits (plus attitude envelope). Throws
/// NonMonotoneConfiguration naming the violating triangle and link angle.
void assert_monotone_regime(const RoverModel& model);

/// Parses a key=value rover model file, validates invariants, calibrates,
/// and runs the monotone-regime check.
RoverModel load_rover_model(const std::string& path);

/// Serializes a model back to the key=value format (used by tests/tools).
std::string rover_model_to_text(const RoverParams& params);

}  // namespace ace
