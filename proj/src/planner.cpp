#include "ace/planner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <mutex>
#include <queue>
#include <thread>

#include "ace/oracle.hpp"
#include "ace/terrain_gen.hpp"

namespace ace {

namespace {
constexpr double kDegToRad = 3.14159265358979323846 / 180.0;
}

PlannerConfig PlannerConfig::normalized() const {
    PlannerConfig c = *this;
    if (c.heading_fan.empty()) {
        for (int d = -40; d <= 40; d += 10) c.heading_fan.push_back(d * kDegToRad);
    }
    return c;
}

CollisionChecker::Verdict AceChecker::do_check(const Pose2D& pose) {
    const Evaluation ev = evaluate_pose(dem_, pose, model_, thresholds_, epsilon_);
    switch (ev.verdict.overall) {
        case SafetyVerdict::Overall::Safe: return Verdict::Safe;
        case SafetyVerdict::Overall::Unsafe: return Verdict::Unsafe;
        default: return Verdict::Unevaluatable;
    }
}

CollisionChecker::Verdict PlanefitCollisionChecker::do_check(const Pose2D& pose) {
    switch (map_.check(pose)) {
        case PlanefitChecker::Verdict::Safe: return Verdict::Safe;
        case PlanefitChecker::Verdict::Unsafe: return Verdict::Unsafe;
        default: return Verdict::Unevaluatable;
    }
}

CollisionChecker::Verdict IdealChecker::do_check(const Pose2D& pose) {
    const SettleResult s = settle(dem_, pose, model_);
    if (s.terrain_status != QueryStatus::Ok) return Verdict::Unevaluatable;
    if (!s.converged) return Verdict::Unsafe;
    // Gate the exact state against the same thresholds the bound checker
    // uses, so conservatism implies dominance.
    const auto in_range = [](double v, const JointLimits& l) {
        return v >= l.min && v <= l.max;
    };
    if (!in_range(s.suspension.delta_l, thresholds_.delta_range) ||
        !in_range(s.suspension.delta_r, thresholds_.delta_range)) {
        return Verdict::Unsafe;
    }
    if (model_.is_rocker_bogie() &&
        (!in_range(s.suspension.beta_l, thresholds_.beta_range) ||
         !in_range(s.suspension.beta_r, thresholds_.beta_range))) {
        return Verdict::Unsafe;
    }
    const ExactClearance c = exact_clearance(dem_, pose, model_, s);
    if (c.status != QueryStatus::Ok) return Verdict::Unevaluatable;
    if (c.clearance < thresholds_.min_clearance) return Verdict::Unsafe;
    const double tilt =
        std::acos(std::clamp(std::cos(s.body.phi) * std::cos(s.body.theta), -1.0, 1.0));
    if (tilt > thresholds_.max_tilt) return Verdict::Unsafe;
    return Verdict::Safe;
}

namespace {

Pose2D arc_point(const Pose2D& from, double heading_offset, double edge_length,
                 double s) {
    const double k = heading_offset / edge_length;
    if (std::abs(heading_offset) < 1e-9) {
        return make_pose(from.x + s * std::cos(from.psi), from.y + s * std::sin(from.psi),
                         from.psi);
    }
    const double radius = 1.0 / k;
    const double h = from.psi + k * s;
    return make_pose(from.x + radius * (std::sin(h) - std::sin(from.psi)),
                     from.y - radius * (std::cos(h) - std::cos(from.psi)), h);
}

struct Node {
    Pose2D pose;
    double g = 0.0;       // planned path length from the current pose
    double f = 0.0;       // g + straight-line distance to goal
    int depth = 0;
    int first_edge = -1;  // heading index of the depth-1 ancestor edge
    double own_offset = 0.0;
    int id = 0;
};

struct NodeOrder {
    bool operator()(const Node& a, const Node& b) const {
        if (a.f != b.f) return a.f > b.f;
        const double oa = std::abs(a.own_offset), ob = std::abs(b.own_offset);
        if (oa != ob) return oa > ob;
        return a.id > b.id;
    }
};

/// One tree search from `from`. Returns the heading-fan index of the first
/// edge of the best node, or -1 when no safe edge exists.
int search_step(const Pose2D& from, double goal_x, double goal_y,
                CollisionChecker& checker, const PlannerConfig& cfg) {
    std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
    int next_id = 0;
    Node root;
    root.pose = from;
    root.f = std::hypot(goal_x - from.x, goal_y - from.y);
    root.id = next_id++;
    open.push(root);

    bool have_best = false;
    Node best;
    int expansions = 0;
    while (!open.empty() && expansions < cfg.max_expansions) {
        const Node node = open.top();
        open.pop();
        if (node.depth > 0 && (!have_best || NodeOrder{}(best, node))) {
            best = node;
            have_best = true;
        }
        // f = g + straight-line-to-goal is consistent, so the first node
        // popped at full depth (or inside the goal circle) is optimal.
        if (node.depth > 0 &&
            (node.depth >= cfg.tree_depth ||
             std::hypot(goal_x - node.pose.x, goal_y - node.pose.y) <=
                 cfg.goal_tolerance)) {
            best = node;
            have_best = true;
            break;
        }
        ++expansions;
        for (int e = 0; e < static_cast<int>(cfg.heading_fan.size()); ++e) {
            const double offset = cfg.heading_fan[e];
            bool pruned = false;
            for (double s = cfg.check_interval; s < cfg.edge_length + 1e-9;
                 s += cfg.check_interval) {
                const Pose2D p = arc_point(node.pose, offset, cfg.edge_length,
                                           std::min(s, cfg.edge_length));
                if (checker.check(p) != CollisionChecker::Verdict::Safe) {
                    pruned = true;
                    break;
                }
            }
            if (pruned) continue;
            Node child;
            child.pose = arc_point(node.pose, offset, cfg.edge_length, cfg.edge_length);
            child.g = node.g + cfg.edge_length;
            child.f = child.g + std::hypot(goal_x - child.pose.x, goal_y - child.pose.y);
            child.depth = node.depth + 1;
            child.first_edge = node.depth == 0 ? e : node.first_edge;
            child.own_offset = offset;
            child.id = next_id++;
            open.push(child);
        }
    }
    while (!open.empty()) {
        const Node& node = open.top();
        if (node.depth > 0 && (!have_best || NodeOrder{}(best, node))) {
            best = node;
            have_best = true;
        }
        open.pop();
    }
    return have_best ? best.first_edge : -1;
}

}  // namespace

PlanOutcome plan([[maybe_unused]] const Dem& dem, const Pose2D& start, double goal_x,
                 double goal_y, CollisionChecker& checker, const PlannerConfig& config) {
    const auto t0 = std::chrono::steady_clock::now();
    const PlannerConfig cfg = config.normalized();
    checker.reset_calls();

    PlanOutcome out;
    out.path.push_back(start);
    out.straight_distance = std::hypot(goal_x - start.x, goal_y - start.y);

    double executed = 0.0;
    Pose2D pose = start;
    if (checker.check(pose) == CollisionChecker::Verdict::Safe) {
        for (int replan = 0; replan < cfg.max_replans; ++replan) {
            if (std::hypot(goal_x - pose.x, goal_y - pose.y) <= cfg.goal_tolerance) {
                out.success = true;
                break;
            }
            const int edge = search_step(pose, goal_x, goal_y, checker, cfg);
            if (edge < 0) break;
            for (double s = cfg.check_interval; s < cfg.edge_length + 1e-9;
                 s += cfg.check_interval) {
                out.path.push_back(arc_point(pose, cfg.heading_fan[edge], cfg.edge_length,
                                             std::min(s, cfg.edge_length)));
            }
            pose = out.path.back();
            executed += cfg.edge_length;
            ++out.replans;
        }
        if (!out.success &&
            std::hypot(goal_x - pose.x, goal_y - pose.y) <= cfg.goal_tolerance) {
            out.success = true;
        }
    }

    out.path_length = executed + std::hypot(goal_x - pose.x, goal_y - pose.y);
    out.inefficiency =
        out.straight_distance > 0.0 ? out.path_length / out.straight_distance - 1.0 : 0.0;
    out.checker_calls = checker.calls();
    out.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

std::string checker_name(CheckerKind kind) {
    switch (kind) {
        case CheckerKind::Ace: return "ace";
        case CheckerKind::Planefit: return "planefit";
        default: return "ideal";
    }
}

std::vector<BenchmarkRow> run_benchmark(const RoverModel& model,
                                        const SafetyThresholds& thresholds,
                                        const PlanefitThresholds& planefit_thresholds,
                                        const BenchmarkParams& params) {
    struct Task {
        int level;
        int map;
        std::uint64_t map_seed;
    };
    std::vector<Task> tasks;
    for (int level = 0; level < static_cast<int>(params.cfa_levels.size()); ++level) {
        for (int map = 0; map < params.maps_per_level; ++map) {
            const std::uint64_t map_seed =
                params.seed + 1000003ULL * static_cast<std::uint64_t>(level) +
                static_cast<std::uint64_t>(map);
            tasks.push_back({level, map, map_seed});
        }
    }

    std::vector<std::vector<BenchmarkRow>> results(tasks.size());
    std::mutex next_mutex;
    std::size_t next_task = 0;

    const auto worker = [&]() {
        for (;;) {
            std::size_t idx;
            {
                std::lock_guard<std::mutex> lock(next_mutex);
                if (next_task >= tasks.size()) return;
                idx = next_task++;
            }
            const Task& task = tasks[idx];
            const double cfa = params.cfa_levels[task.level];
            const double half = 0.5 * params.drive_distance;
            const Pose2D start = make_pose(-half, 0.0, 0.0);
            const double goal_x = half, goal_y = 0.0;
            const std::vector<Disc> clears = {
                {start.x, start.y, params.start_clear_radius},
                {goal_x, goal_y, params.start_clear_radius}};
            const RockFieldResult field =
                generate_rock_field(cfa, params.extent_x, params.extent_y,
                                    params.resolution, task.map_seed, clears);

            for (const CheckerKind kind : params.checkers) {
                std::unique_ptr<CollisionChecker> checker;
                switch (kind) {
                    case CheckerKind::Ace:
                        checker = std::make_unique<AceChecker>(field.dem, model, thresholds,
                                                               params.epsilon);
                        break;
                    case CheckerKind::Planefit:
                        checker = std::make_unique<PlanefitCollisionChecker>(
                            field.dem, model, planefit_thresholds);
                        break;
                    case CheckerKind::Ideal:
                        checker = std::make_unique<IdealChecker>(field.dem, model, thresholds);
                        break;
                }
                const PlanOutcome outcome =
                    plan(field.dem, start, goal_x, goal_y, *checker, params.planner);
                BenchmarkRow row;
                row.cfa = cfa;
                row.checker = checker_name(kind);
                row.map_seed = task.map_seed;
                row.success = outcome.success;
                row.path_length_m = outcome.path_length;
                row.inefficiency = outcome.inefficiency;
                row.checker_calls = outcome.checker_calls;
                row.wall_time_s = outcome.wall_time_s;
                results[idx].push_back(row);
            }
        }
    };

    const int n_threads = std::max(1, params.threads);
    std::vector<std::thread> pool;
    for (int i = 1; i < n_threads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::vector<BenchmarkRow> rows;
    for (const auto& r : results) rows.insert(rows.end(), r.begin(), r.end());
    return rows;
}

std::vector<BenchmarkStat> aggregate_benchmark(const std::vector<BenchmarkRow>& rows) {
    std::vector<BenchmarkStat> stats;
    for (const auto& row : rows) {
        BenchmarkStat* stat = nullptr;
        for (auto& s : stats) {
            if (s.cfa == row.cfa && s.checker == row.checker) {
                stat = &s;
                break;
            }
        }
        if (!stat) {
            stats.push_back(BenchmarkStat{row.cfa, row.checker, 0, 0.0, 0.0, 0.0, 0});
            stat = &stats.back();
        }
        ++stat->runs;
        if (row.success) {
            ++stat->successes;
            stat->mean_inefficiency += row.inefficiency;
            stat->stderr_inefficiency += row.inefficiency * row.inefficiency;
        }
    }
    for (auto& s : stats) {
        s.success_rate = s.runs > 0 ? static_cast<double>(s.successes) / s.runs : 0.0;
        if (s.successes > 0) {
            const double mean = s.mean_inefficiency / s.successes;
            const double ex2 = s.stderr_inefficiency / s.successes;
            const double var = std::max(0.0, ex2 - mean * mean);
            s.mean_inefficiency = mean;
            s.stderr_inefficiency =
                s.successes > 1 ? std::sqrt(var / (s.successes - 1)) : 0.0;
        } else {
            s.mean_inefficiency = 0.0;
            s.stderr_inefficiency = 0.0;
        }
    }
    return stats;
}

}  // namespace ace
