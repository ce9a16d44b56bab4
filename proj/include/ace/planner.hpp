#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ace/bounds.hpp"
#include "ace/kinematics.hpp"
#include "ace/planefit.hpp"
#include "ace/terrain.hpp"

namespace ace {

struct PlannerConfig {
    int tree_depth = 5;
    double edge_length = 1.5;      // [m]
    double check_interval = 0.25;  // [m]
    std::vector<double> heading_fan;  // [rad]; default set in normalized()
    double goal_tolerance = 1.5;   // [m]
    int max_replans = 60;
    int max_expansions = 1500;     // node budget per replan

    /// Fills the default symmetric 9-way fan (-40..40 deg) when empty.
    PlannerConfig normalized() const;
};

/// Pose safety decision used by the planner. Implementations are
/// deterministic functions of (terrain, pose).
class CollisionChecker {
public:
    enum class Verdict { Safe, Unsafe, Unevaluatable };
    virtual ~CollisionChecker() = default;
    Verdict check(const Pose2D& pose) {
        ++calls_;
        return do_check(pose);
    }
    virtual std::string name() const = 0;
    long calls() const { return calls_; }
    void reset_calls() { calls_ = 0; }

protected:
    virtual Verdict do_check(const Pose2D& pose) = 0;
    long calls_ = 0;
};

/// Closed-form conservative bound checker.
class AceChecker : public CollisionChecker {
public:
    AceChecker(const Dem& dem, const RoverModel& model, const SafetyThresholds& th,
               double epsilon)
        : dem_(dem), model_(model), thresholds_(th), epsilon_(epsilon) {}
    std::string name() const override { return "ace"; }

protected:
    Verdict do_check(const Pose2D& pose) override;

private:
    const Dem& dem_;
    const RoverModel& model_;
    SafetyThresholds thresholds_;
    double epsilon_;
};

/// Plane-fit hazard-map checker (slope/roughness/step + rover-radius
/// dilation).
class PlanefitCollisionChecker : public CollisionChecker {
public:
    PlanefitCollisionChecker(const Dem& dem, const RoverModel& model,
                             const PlanefitThresholds& th)
        : map_(dem, model, th) {}
    std::string name() const override { return "planefit"; }

protected:
    Verdict do_check(const Pose2D& pose) override;

private:
    PlanefitChecker map_;
};

/// Ground-truth checker: settles the rover and gates the exact state.
class IdealChecker : public CollisionChecker {
public:
    IdealChecker(const Dem& dem, const RoverModel& model, const SafetyThresholds& th)
        : dem_(dem), model_(model), thresholds_(th) {}
    std::string name() const override { return "ideal"; }

protected:
    Verdict do_check(const Pose2D& pose) override;

private:
    const Dem& dem_;
    const RoverModel& model_;
    SafetyThresholds thresholds_;
};

struct PlanOutcome {
    bool success = false;
    std::vector<Pose2D> path;       // executed poses, starting at the start pose
    double path_length = 0.0;       // executed length + straight remainder [m]
    double straight_distance = 0.0; // start to goal [m]
    double inefficiency = 0.0;      // path_length / straight_distance - 1
    long checker_calls = 0;
    double wall_time_s = 0.0;
    int replans = 0;
};

/// Receding-horizon constant-curvature tree search. Each cycle grows a
/// depth-limited tree over the heading fan, prunes edges with unsafe or
/// unevaluatable checkpoints, executes the first edge of the best node, and
/// replans until the goal tolerance or a failure condition is reached.
PlanOutcome plan(const Dem& dem, const Pose2D& start, double goal_x, double goal_y,
                 CollisionChecker& checker, const PlannerConfig& config);

enum class CheckerKind { Ace, Planefit, Ideal };
std::string checker_name(CheckerKind kind);

struct BenchmarkParams {
    std::vector<double> cfa_levels = {0.05, 0.10, 0.15, 0.20};
    int maps_per_level = 20;
    std::uint64_t seed = 1;
    std::vector<CheckerKind> checkers = {CheckerKind::Ace, CheckerKind::Planefit,
                                         CheckerKind::Ideal};
    double extent_x = 40.0;
    double extent_y = 30.0;
    double resolution = 0.1;
    double drive_distance = 20.0;
    // Rock-free discs at start and goal; covers the plane-fit dilation
    // radius as well as the wheel boxes.
    double start_clear_radius = 3.2;
    double epsilon = 0.0;
    int threads = 2;
    PlannerConfig planner;
};

struct BenchmarkRow {
    double cfa = 0.0;
    std::string checker;
    std::uint64_t map_seed = 0;
    bool success = false;
    double path_length_m = 0.0;
    double inefficiency = 0.0;
    long checker_calls = 0;
    double wall_time_s = 0.0;
};

struct BenchmarkStat {
    double cfa = 0.0;
    std::string checker;
    int runs = 0;
    double success_rate = 0.0;
    double mean_inefficiency = 0.0;  // over successful runs
    double stderr_inefficiency = 0.0;
    int successes = 0;
};

/// Plans on maps_per_level random rock fields per CFA level with every
/// requested checker. Maps are generated per (level, map) seed and shared
/// across checkers; rows come back in deterministic order regardless of the
/// thread count.
std::vector<BenchmarkRow> run_benchmark(const RoverModel& model,
                                        const SafetyThresholds& thresholds,
                                        const PlanefitThresholds& planefit_thresholds,
                                        const BenchmarkParams& params);

std::vector<BenchmarkStat> aggregate_benchmark(const std::vector<BenchmarkRow>& rows);

}  // namespace ace
