#pragma once

#include <string>

#include "ace/interval.hpp"
#include "ace/kinematics.hpp"
#include "ace/terrain.hpp"

namespace ace {

/// Per-wheel height intervals (z-down), already widened by the perception
/// margin epsilon. Middle pair unused for the rocker variant.
struct WheelIntervals {
    Interval fl, fr, ml, mr, rl, rr;
    double epsilon = 0.0;

    const Interval& at(int wheel) const {
        switch (wheel) {
            case kFrontLeft: return fl;
            case kFrontRight: return fr;
            case kMiddleLeft: return ml;
            case kMiddleRight: return mr;
            case kRearLeft: return rl;
            default: return rr;
        }
    }
    Interval& at(int wheel) {
        return const_cast<Interval&>(static_cast<const WheelIntervals*>(this)->at(wheel));
    }
};

/// Closed-form bounds on every propagated state quantity.
struct StateBounds {
    Interval delta;   // left rocker angle; the right one is its negation
    Interval beta_l, beta_r;
    Interval z_d_l, z_d_r;
    Interval z_b_l, z_b_r;
    Interval phi, theta;
    Interval abs_phi, abs_theta;
    Interval z_o;
    Interval z_p;
    Interval clearance;      // filled by clearance_interval / evaluate_pose
    double wheel_drop = 0.0; // widest wheel height interval [m]
};

struct SafetyThresholds {
    double min_clearance = 0.15;
    double max_tilt = 0.5235987755982988;  // 30 deg
    JointLimits delta_range;
    JointLimits beta_range;
    double max_wheel_drop = 0.25;
};

/// Thresholds with suspension ranges and wheel-drop limit taken from the
/// model (the documented defaults).
SafetyThresholds default_thresholds(const RoverModel& model);

struct MetricCheck {
    bool pass = true;
    double worst = 0.0;  // the value the threshold was compared against
};

struct SafetyVerdict {
    enum class Overall { Safe, Unsafe, Unevaluatable };
    Overall overall = Overall::Unevaluatable;
    MetricCheck clearance;   // worst = clearance lower bound [m]
    MetricCheck tilt;        // worst = combined tilt upper bound [rad]
    MetricCheck suspension;  // worst = largest range overshoot [rad], <= 0 passes
    MetricCheck wheel_drop;  // worst = widest wheel interval [m]
    std::string reason;      // set when overall != Safe
};

struct WheelIntervalsResult {
    bool ok = false;
    WheelIntervals intervals;
    QueryStatus fail_status = QueryStatus::Ok;
    std::string reason;
};

/// Min/max terrain heights in each wheel box, widened by epsilon. Any
/// unknown cell or out-of-bounds box makes the pose unevaluatable.
WheelIntervalsResult wheel_height_intervals(const Dem& dem, const Pose2D& pose,
                                            const RoverModel& model, double epsilon);

/// Closed-form propagation of wheel intervals to suspension, attitude, body
/// height and pan height bounds. Throws KinematicInfeasible when an extreme
/// corner exceeds link reach and AttitudeDomainError when the roll arcsin
/// argument leaves its domain.
StateBounds propagate_bounds(const WheelIntervals& w, const RoverModel& model);

/// Reference bounds from exact kinematics at the extreme wheel-height
/// combinations (8 per side, 8x8 across sides for body quantities).
/// Tightness cross-check for propagate_bounds; clearance is not filled.
StateBounds bounds_via_extremes(const WheelIntervals& w, const RoverModel& model);

struct ClearanceResult {
    QueryStatus status = QueryStatus::Ok;
    Interval clearance;
    Interval ground;  // [z_g], z-down, epsilon-widened
};

/// Conservative clearance interval from the ground under the belly pan.
/// The pan query region is grown by the worst-case in-plane shift implied
/// by the attitude bounds, and by epsilon in height.
ClearanceResult clearance_interval(const StateBounds& bounds, const Dem& dem,
                                   const Pose2D& pose, const RoverModel& model,
                                   double epsilon);

struct Evaluation {
    SafetyVerdict verdict;
    StateBounds bounds;       // valid when bounds_valid
    WheelIntervals wheels;    // valid when wheels_valid
    bool wheels_valid = false;
    bool bounds_valid = false;
};

/// Full pose assessment: wheel intervals -> state bounds -> clearance ->
/// safety gate. Kinematic infeasibility at an extreme corner is an unsafe
/// verdict (wheel-drop class), not an error.
Evaluation evaluate_pose(const Dem& dem, const Pose2D& pose, const RoverModel& model,
                         const SafetyThresholds& thresholds, double epsilon);

}  // namespace ace
