#pragma once

#include <array>
#include <optional>

#include "ace/kinematics.hpp"
#include "ace/terrain.hpp"

namespace ace {

/// Result of the iterative kinematic settling. The suspension/body state is
/// the forward kinematics of the final contact heights, so feeding those
/// heights back through the solver reproduces it exactly.
struct SettleResult {
    SuspensionState suspension;
    BodyState body;
    std::array<Vec3, kWheelCount> contacts{};  // world contact points
    double residual = 0.0;                     // max contact-height change [m]
    int iterations = 0;
    bool converged = false;
    bool infeasible = false;             // terrain exceeds link reach; no settle exists
    bool limits_exceeded = false;        // settled outside suspension limits
    QueryStatus terrain_status = QueryStatus::Ok;  // Unknown/OutOfBounds abort
};

/// The model's wheel boxes placed at a pose, in world coordinates.
std::array<OrientedBox, kWheelCount> wheel_boxes_world(const RoverModel& model,
                                                       const Pose2D& pose);

/// Ground-truth settling: fixed-point iteration alternating forward
/// kinematics on the current contact heights with contact re-detection
/// under the moved wheel footprints. Converges when contact heights change
/// by no more than the tolerance.
SettleResult settle(const Dem& dem, const Pose2D& pose, const RoverModel& model,
                    double tolerance = 1e-6, int max_iterations = 200);

/// As settle, but each wheel's contact point is confined to the given world
/// region (normally the wheel's conservative box at the pose).
SettleResult settle_constrained(const Dem& dem, const Pose2D& pose,
                                const RoverModel& model,
                                const std::array<OrientedBox, kWheelCount>& boxes,
                                double tolerance = 1e-6, int max_iterations = 200);

/// Exact clearance of a settled state: highest ground under the attitude-
/// shifted pan footprint against the lowest pan point.
struct ExactClearance {
    QueryStatus status = QueryStatus::Ok;
    double clearance = 0.0;
};
ExactClearance exact_clearance(const Dem& dem, const Pose2D& pose,
                               const RoverModel& model, const SettleResult& settled);

}  // namespace ace
