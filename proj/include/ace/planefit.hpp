#pragma once

#include <cstdint>
#include <vector>

#include "ace/kinematics.hpp"
#include "ace/terrain.hpp"

namespace ace {

/// Least-squares plane metrics over a circular window: slope of the fitted
/// plane, max |residual| roughness, and max adjacent-cell step.
struct PlanefitMetrics {
    QueryStatus status = QueryStatus::Ok;
    double slope = 0.0;      // [rad]
    double roughness = 0.0;  // [m]
    double step = 0.0;       // [m]
    double z_center = 0.0;   // plane height (z-down) at the window center
    double dz_dx = 0.0;      // plane gradient, z-down per meter
    double dz_dy = 0.0;
    int cells = 0;
};

PlanefitMetrics planefit_window(const Dem& dem, double cx, double cy, double radius);

struct PlanefitThresholds {
    double max_slope = 0.3490658503988659;  // 20 deg
    double max_roughness = 0.10;
    double max_step = 0.20;
    double window_radius = 0.8;  // per-cell goodness fit window [m]
};

enum class CellGoodness : std::uint8_t { Good = 0, Unknown = 1, Bad = 2 };

/// Plane-fit hazard map: per-cell goodness from slope/roughness/step
/// thresholds, then worst-value dilation by the rover radius. The verdict
/// for a pose is the dilated goodness at its cell.
class PlanefitChecker {
public:
    PlanefitChecker(const Dem& dem, const RoverModel& model,
                    const PlanefitThresholds& thresholds);

    enum class Verdict { Safe, Unsafe, Unevaluatable };
    Verdict check(const Pose2D& pose) const;

    double rover_radius() const { return rover_radius_; }
    const std::vector<std::uint8_t>& dilated_goodness() const { return dilated_; }

private:
    const Dem& dem_;
    double rover_radius_;
    std::vector<std::uint8_t> dilated_;
};

/// Longitudinal half-extent of the wheel footprint; the hazard dilation
/// radius.
double rover_footprint_radius(const RoverModel& model);

/// Rover state estimate from a fitted plane: the rover is assumed to sit on
/// the plane, so suspension deflections vanish and clearance follows from
/// the pan pose against the highest terrain under the pan footprint.
struct PlanefitEstimate {
    QueryStatus status = QueryStatus::Ok;
    double clearance = 0.0;
    double phi = 0.0;       // roll estimate in the heading frame [rad]
    double theta = 0.0;     // pitch estimate [rad]
    double beta = 0.0;      // always zero on a plane
    double roughness = 0.0; // max |plane residual| in the window [m]
};

PlanefitEstimate planefit_estimate(const Dem& dem, const Pose2D& pose,
                                   const RoverModel& model, double window_radius = 1.25);

/// Classic point-list formulation of the plane-fit estimator: gathers the
/// window into a point cloud, solves the least-squares normal equations,
/// then derives the hazard metrics, pose, and clearance. This is the
/// per-pose baseline the timing comparison runs against.
PlanefitEstimate planefit_points_estimate(const Dem& dem, const Pose2D& pose,
                                          const RoverModel& model,
                                          double window_radius = 0.8);

}  // namespace ace
