// Command-line front end: pose evaluation, terrain generation, undulation
// sweeps, trajectory replays, planner benchmarks, and timing measurements.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "ace/bounds.hpp"
#include "ace/esri_ascii.hpp"
#include "ace/json_io.hpp"
#include "ace/kinematics.hpp"
#include "ace/manifest.hpp"
#include "ace/oracle.hpp"
#include "ace/planefit.hpp"
#include "ace/planner.hpp"
#include "ace/terrain.hpp"
#include "ace/terrain_gen.hpp"

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kDegToRad = kPi / 180.0;

// Exit codes: 0 safe / success, 1 unsafe, 2 unevaluatable, 3 usage error,
// 4 input or IO error.
constexpr int kExitSafe = 0;
constexpr int kExitUnsafe = 1;
constexpr int kExitUnevaluatable = 2;
constexpr int kExitUsage = 3;
constexpr int kExitError = 4;

std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

ace::Pose2D parse_pose(const std::string& text) {
    double x = 0.0, y = 0.0, psi_deg = 0.0;
    char c1 = 0, c2 = 0;
    std::istringstream in(text);
    if (!(in >> x >> c1 >> y >> c2 >> psi_deg) || c1 != ',' || c2 != ',') {
        throw CLI::ValidationError("--pose", "expected x,y,psi_deg");
    }
    return ace::make_pose(x, y, psi_deg * kDegToRad);
}

struct CommonEvalArgs {
    std::string dem_path;
    std::string rover_path;
    std::string pose_text = "0,0,0";
    double epsilon_mm = 0.0;
    double min_clearance = 0.15;
    double max_tilt_deg = 30.0;
    double max_wheel_drop = -1.0;  // <0: wheel radius
};

ace::SafetyThresholds thresholds_from(const CommonEvalArgs& args,
                                      const ace::RoverModel& model) {
    ace::SafetyThresholds th = ace::default_thresholds(model);
    th.min_clearance = args.min_clearance;
    th.max_tilt = args.max_tilt_deg * kDegToRad;
    if (args.max_wheel_drop >= 0.0) th.max_wheel_drop = args.max_wheel_drop;
    return th;
}

int cmd_evaluate(const CommonEvalArgs& args) {
    const ace::RoverModel model = ace::load_rover_model(args.rover_path);
    const ace::Dem dem = ace::read_esri_ascii(args.dem_path);
    const ace::Pose2D pose = parse_pose(args.pose_text);
    const ace::SafetyThresholds th = thresholds_from(args, model);
    const ace::Evaluation ev =
        ace::evaluate_pose(dem, pose, model, th, args.epsilon_mm * 1e-3);

    nlohmann::json out = ace::to_json(ev, model);
    out["pose"] = {{"x", pose.x}, {"y", pose.y}, {"psi", pose.psi}};
    out["epsilon_mm"] = args.epsilon_mm;
    out["thresholds"] = {{"min_clearance", th.min_clearance},
                         {"max_tilt", th.max_tilt},
                         {"max_wheel_drop", th.max_wheel_drop}};
    out["manifest"] = ace::make_manifest(
        "evaluate",
        {{"pose", args.pose_text}, {"epsilon_mm", args.epsilon_mm}},
        {args.dem_path, args.rover_path});
    std::cout << out.dump(2) << "\n";

    switch (ev.verdict.overall) {
        case ace::SafetyVerdict::Overall::Safe: return kExitSafe;
        case ace::SafetyVerdict::Overall::Unsafe: return kExitUnsafe;
        default: return kExitUnevaluatable;
    }
}

struct SweepArgs {
    std::string rover_path;
    double a_min = -0.1;
    double a_max = 0.1;
    int steps = 41;
    double extent_x = 16.0;
    double extent_y = 10.0;
    double resolution = 0.1;
    double epsilon_mm = 0.0;
    double noise_sigma_mm = 0.0;
    std::uint64_t seed = 1;
    std::string out_path;
};

int cmd_sweep(const SweepArgs& args) {
    const ace::RoverModel model = ace::load_rover_model(args.rover_path);
    const ace::SafetyThresholds th = ace::default_thresholds(model);
    std::ostringstream csv;
    csv << "a,evaluatable,clearance_lo,clearance_hi,clearance_truth,clearance_planefit,"
           "phi_lo,phi_hi,phi_truth,theta_lo,theta_hi,theta_truth,theta_planefit,"
           "delta_lo,delta_hi,delta_truth,beta_l_lo,beta_l_hi,beta_l_truth,"
           "beta_r_lo,beta_r_hi,beta_r_truth,beta_planefit,z_o_lo,z_o_hi,z_o_truth,"
           "truth_in_bounds,oracle_converged\n";
    const ace::Pose2D pose = ace::make_pose(0.0, 0.0, 0.0);
    for (int i = 0; i < args.steps; ++i) {
        const double a = args.steps == 1
                             ? args.a_min
                             : args.a_min + (args.a_max - args.a_min) * i / (args.steps - 1);
        const ace::Dem clean =
            ace::generate_quadratic(a, args.extent_x, args.extent_y, args.resolution);
        ace::Dem seen = clean;
        if (args.noise_sigma_mm > 0.0) {
            ace::add_height_noise(seen, args.noise_sigma_mm * 1e-3, 0.015,
                                  args.seed + static_cast<std::uint64_t>(i));
        }
        const ace::Evaluation ev =
            ace::evaluate_pose(seen, pose, model, th, args.epsilon_mm * 1e-3);
        const ace::SettleResult truth = ace::settle_constrained(
            clean, pose, model, ace::wheel_boxes_world(model, pose));
        const ace::PlanefitEstimate pf = ace::planefit_estimate(seen, pose, model);
        const ace::ExactClearance tc = ace::exact_clearance(clean, pose, model, truth);

        csv << fmt9(a) << ',' << (ev.bounds_valid ? 1 : 0) << ',';
        if (!ev.bounds_valid || !truth.converged || tc.status != ace::QueryStatus::Ok) {
            for (int k = 0; k < 24; ++k) csv << "nan,";
            csv << "0," << (truth.converged ? 1 : 0) << "\n";
            continue;
        }
        const auto& b = ev.bounds;
        const double tol = 1e-9;
        const bool contained =
            b.phi.lo - tol <= truth.body.phi && truth.body.phi <= b.phi.hi + tol &&
            b.theta.lo - tol <= truth.body.theta && truth.body.theta <= b.theta.hi + tol &&
            b.delta.lo - tol <= truth.suspension.delta_l &&
            truth.suspension.delta_l <= b.delta.hi + tol &&
            b.beta_l.lo - tol <= truth.suspension.beta_l &&
            truth.suspension.beta_l <= b.beta_l.hi + tol &&
            b.beta_r.lo - tol <= truth.suspension.beta_r &&
            truth.suspension.beta_r <= b.beta_r.hi + tol &&
            b.z_o.lo - tol <= truth.body.z_o && truth.body.z_o <= b.z_o.hi + tol &&
            tc.clearance >= b.clearance.lo - tol;
        csv << fmt9(b.clearance.lo) << ',' << fmt9(b.clearance.hi) << ','
            << fmt9(tc.clearance) << ',' << fmt9(pf.clearance) << ',' << fmt9(b.phi.lo)
            << ',' << fmt9(b.phi.hi) << ',' << fmt9(truth.body.phi) << ','
            << fmt9(b.theta.lo) << ',' << fmt9(b.theta.hi) << ','
            << fmt9(truth.body.theta) << ',' << fmt9(pf.theta) << ','
            << fmt9(b.delta.lo) << ',' << fmt9(b.delta.hi) << ','
            << fmt9(truth.suspension.delta_l) << ',' << fmt9(b.beta_l.lo) << ','
            << fmt9(b.beta_l.hi) << ',' << fmt9(truth.suspension.beta_l) << ','
            << fmt9(b.beta_r.lo) << ',' << fmt9(b.beta_r.hi) << ','
            << fmt9(truth.suspension.beta_r) << ',' << fmt9(pf.beta) << ','
            << fmt9(b.z_o.lo) << ',' << fmt9(b.z_o.hi) << ',' << fmt9(truth.body.z_o)
            << ',' << (contained ? 1 : 0) << ',' << (truth.converged ? 1 : 0) << "\n";
    }
    std::ofstream out(args.out_path);
    if (!out) throw ace::ModelError("sweep: cannot write '" + args.out_path + "'");
    out << csv.str();
    ace::write_manifest_sidecar(
        args.out_path,
        ace::make_manifest("sweep",
                           {{"a_min", args.a_min},
                            {"a_max", args.a_max},
                            {"steps", args.steps},
                            {"extent_x", args.extent_x},
                            {"extent_y", args.extent_y},
                            {"resolution", args.resolution},
                            {"epsilon_mm", args.epsilon_mm},
                            {"noise_sigma_mm", args.noise_sigma_mm},
                            {"seed", args.seed}},
                           {args.rover_path}));
    return kExitSafe;
}

struct DriveArgs {
    std::string dem_path;
    std::string rover_path;
    std::string waypoints;  // "x0,y0;x1,y1;..."
    double step = 0.25;
    double epsilon_mm = 0.0;
    double noise_sigma_mm = 0.0;
    std::uint64_t seed = 1;
    std::string out_path;
};

std::vector<std::pair<double, double>> parse_waypoints(const std::string& text) {
    std::vector<std::pair<double, double>> pts;
    std::istringstream in(text);
    std::string part;
    while (std::getline(in, part, ';')) {
        double x = 0.0, y = 0.0;
        char c = 0;
        std::istringstream p(part);
        if (!(p >> x >> c >> y) || c != ',') {
            throw CLI::ValidationError("--waypoints", "expected x0,y0;x1,y1;...");
        }
        pts.emplace_back(x, y);
    }
    if (pts.size() < 2) {
        throw CLI::ValidationError("--waypoints", "need at least two waypoints");
    }
    return pts;
}

int cmd_drive(const DriveArgs& args) {
    const ace::RoverModel model = ace::load_rover_model(args.rover_path);
    const ace::Dem clean = ace::read_esri_ascii(args.dem_path);
    ace::Dem seen = clean;
    if (args.noise_sigma_mm > 0.0) {
        ace::add_height_noise(seen, args.noise_sigma_mm * 1e-3, 0.015, args.seed);
    }
    const ace::SafetyThresholds th = ace::default_thresholds(model);
    const auto pts = parse_waypoints(args.waypoints);

    std::ostringstream csv;
    csv << "s,x,y,psi,evaluatable,phi_truth,phi_lo,phi_hi,theta_truth,theta_lo,theta_hi,"
           "delta_l_truth,delta_lo,delta_hi,beta_l_truth,beta_l_lo,beta_l_hi,"
           "beta_r_truth,beta_r_lo,beta_r_hi,z_o_truth,z_o_lo,z_o_hi,"
           "clearance_truth,clearance_lo,clearance_hi,truth_in_bounds,oracle_converged\n";

    double s_total = 0.0;
    for (std::size_t seg = 0; seg + 1 < pts.size(); ++seg) {
        const double dx = pts[seg + 1].first - pts[seg].first;
        const double dy = pts[seg + 1].second - pts[seg].second;
        const double len = std::hypot(dx, dy);
        const double psi = std::atan2(dy, dx);
        for (double s = 0.0; s <= len + 1e-9; s += args.step) {
            const double f = std::min(s, len) / len;
            const ace::Pose2D pose = ace::make_pose(pts[seg].first + f * dx,
                                                    pts[seg].second + f * dy, psi);
            const ace::Evaluation ev =
                ace::evaluate_pose(seen, pose, model, th, args.epsilon_mm * 1e-3);
            const ace::SettleResult truth = ace::settle_constrained(
                clean, pose, model, ace::wheel_boxes_world(model, pose));
            const ace::ExactClearance tc = ace::exact_clearance(clean, pose, model, truth);
            csv << fmt9(s_total + std::min(s, len)) << ',' << fmt9(pose.x) << ','
                << fmt9(pose.y) << ',' << fmt9(pose.psi) << ','
                << (ev.bounds_valid ? 1 : 0) << ',';
            if (!ev.bounds_valid || !truth.converged ||
                tc.status != ace::QueryStatus::Ok) {
                for (int k = 0; k < 21; ++k) csv << "nan,";
                csv << "0," << (truth.converged ? 1 : 0) << "\n";
                continue;
            }
            const auto& b = ev.bounds;
            const double tol = 1e-9;
            const bool contained =
                b.phi.lo - tol <= truth.body.phi && truth.body.phi <= b.phi.hi + tol &&
                b.theta.lo - tol <= truth.body.theta &&
                truth.body.theta <= b.theta.hi + tol &&
                b.delta.lo - tol <= truth.suspension.delta_l &&
                truth.suspension.delta_l <= b.delta.hi + tol &&
                b.beta_l.lo - tol <= truth.suspension.beta_l &&
                truth.suspension.beta_l <= b.beta_l.hi + tol &&
                b.beta_r.lo - tol <= truth.suspension.beta_r &&
                truth.suspension.beta_r <= b.beta_r.hi + tol &&
                b.z_o.lo - tol <= truth.body.z_o && truth.body.z_o <= b.z_o.hi + tol &&
                tc.clearance >= b.clearance.lo - tol;
            csv << fmt9(truth.body.phi) << ',' << fmt9(b.phi.lo) << ','
                << fmt9(b.phi.hi) << ',' << fmt9(truth.body.theta) << ','
                << fmt9(b.theta.lo) << ',' << fmt9(b.theta.hi) << ','
                << fmt9(truth.suspension.delta_l) << ',' << fmt9(b.delta.lo) << ','
                << fmt9(b.delta.hi) << ',' << fmt9(truth.suspension.beta_l) << ','
                << fmt9(b.beta_l.lo) << ',' << fmt9(b.beta_l.hi) << ','
                << fmt9(truth.suspension.beta_r) << ',' << fmt9(b.beta_r.lo) << ','
                << fmt9(b.beta_r.hi) << ',' << fmt9(truth.body.z_o) << ','
                << fmt9(b.z_o.lo) << ',' << fmt9(b.z_o.hi) << ','
                << fmt9(tc.clearance) << ',' << fmt9(b.clearance.lo) << ','
                << fmt9(b.clearance.hi) << ',' << (contained ? 1 : 0) << ','
                << (truth.converged ? 1 : 0) << "\n";
        }
        s_total += len;
    }
    std::ofstream out(args.out_path);
    if (!out) throw ace::ModelError("drive: cannot write '" + args.out_path + "'");
    out << csv.str();
    ace::write_manifest_sidecar(
        args.out_path,
        ace::make_manifest("drive",
                           {{"waypoints", args.waypoints},
                            {"step", args.step},
                            {"epsilon_mm", args.epsilon_mm},
                            {"noise_sigma_mm", args.noise_sigma_mm},
                            {"seed", args.seed}},
                           {args.dem_path, args.rover_path}));
    return kExitSafe;
}

struct GenTerrainArgs {
    std::string type = "flat";
    double extent_x = 40.0;
    double extent_y = 30.0;
    double resolution = 0.1;
    double a = 0.05;
    double bump_height = 0.2;
    double bump_x = 0.0;
    double bump_y = 0.0;
    double bump_radius = 1.2;
    double slope_deg = 5.0;
    double cfa = 0.10;
    std::uint64_t seed = 1;
    std::string out_path;
};

int cmd_gen_terrain(const GenTerrainArgs& args) {
    nlohmann::json meta;
    meta["generator"] = args.type;
    meta["seed"] = args.seed;
    ace::Dem dem;
    if (args.type == "flat") {
        dem = ace::generate_quadratic(0.0, args.extent_x, args.extent_y, args.resolution);
    } else if (args.type == "quadratic") {
        dem = ace::generate_quadratic(args.a, args.extent_x, args.extent_y,
                                      args.resolution);
        meta["a"] = args.a;
    } else if (args.type == "bump") {
        dem = ace::generate_bump(args.extent_x, args.extent_y, args.resolution,
                                 args.bump_height, args.bump_x, args.bump_y,
                                 args.bump_radius);
        meta["bump_height"] = args.bump_height;
        meta["bump_x"] = args.bump_x;
        meta["bump_y"] = args.bump_y;
        meta["bump_radius"] = args.bump_radius;
    } else if (args.type == "slope") {
        dem = ace::generate_slope(args.slope_deg * kDegToRad, args.extent_x,
                                  args.extent_y, args.resolution);
        meta["slope_deg"] = args.slope_deg;
    } else if (args.type == "rock-field") {
        const ace::RockFieldResult field = ace::generate_rock_field(
            args.cfa, args.extent_x, args.extent_y, args.resolution, args.seed);
        dem = field.dem;
        meta["cfa"] = args.cfa;
        meta["achieved_cfa"] = field.achieved_cfa;
        meta["rocks_placed"] = field.rocks_placed;
    } else {
        throw CLI::ValidationError("--type",
                                   "expected flat|quadratic|bump|slope|rock-field");
    }
    meta["extent_x"] = args.extent_x;
    meta["extent_y"] = args.extent_y;
    meta["resolution"] = args.resolution;

    ace::write_esri_ascii(dem, args.out_path);
    meta["manifest"] = ace::make_manifest("gen-terrain", meta, {});
    std::ofstream side(args.out_path + ".meta.json");
    if (!side) throw ace::ModelError("gen-terrain: cannot write metadata");
    side << meta.dump(2) << "\n";
    return kExitSafe;
}

struct BenchmarkArgs {
    std::string rover_path;
    std::string cfa_list = "0.05,0.10,0.15,0.20";
    int maps = 20;
    std::uint64_t seed = 1;
    std::string checkers = "ace,planefit,ideal";
    int threads = 2;
    double epsilon_mm = 0.0;
    double min_clearance = 0.15;
    double max_tilt_deg = 30.0;
    double suspension_range = -1.0;  // symmetric gate [rad]; <0: model limits
    double max_wheel_drop = -1.0;    // <0: wheel radius
    double pf_step = 0.20;
    double pf_roughness = 0.10;
    double pf_window = 0.8;
    std::string out_path;
};

int cmd_benchmark(const BenchmarkArgs& args) {
    const ace::RoverModel model = ace::load_rover_model(args.rover_path);
    ace::BenchmarkParams params;
    params.cfa_levels.clear();
    {
        std::istringstream in(args.cfa_list);
        std::string part;
        while (std::getline(in, part, ',')) {
            params.cfa_levels.push_back(std::stod(part));
        }
    }
    params.checkers.clear();
    {
        std::istringstream in(args.checkers);
        std::string part;
        while (std::getline(in, part, ',')) {
            if (part == "ace") {
                params.checkers.push_back(ace::CheckerKind::Ace);
            } else if (part == "planefit") {
                params.checkers.push_back(ace::CheckerKind::Planefit);
            } else if (part == "ideal") {
                params.checkers.push_back(ace::CheckerKind::Ideal);
            } else {
                throw CLI::ValidationError("--checkers", "expected ace|planefit|ideal");
            }
        }
    }
    params.maps_per_level = args.maps;
    params.seed = args.seed;
    params.threads = args.threads;
    params.epsilon = args.epsilon_mm * 1e-3;

    ace::SafetyThresholds th = ace::default_thresholds(model);
    th.min_clearance = args.min_clearance;
    th.max_tilt = args.max_tilt_deg * kDegToRad;
    if (args.suspension_range >= 0.0) {
        th.delta_range = {-args.suspension_range, args.suspension_range};
        th.beta_range = {-args.suspension_range, args.suspension_range};
    }
    if (args.max_wheel_drop >= 0.0) th.max_wheel_drop = args.max_wheel_drop;

    ace::PlanefitThresholds pf;
    pf.max_step = args.pf_step;
    pf.max_roughness = args.pf_roughness;
    pf.window_radius = args.pf_window;

    const auto rows = ace::run_benchmark(model, th, pf, params);

    std::ostringstream csv;
    csv << "cfa,checker,map_seed,success,path_length_m,inefficiency,checker_calls,"
           "wall_time_s\n";
    for (const auto& r : rows) {
        csv << fmt9(r.cfa) << ',' << r.checker << ',' << r.map_seed << ','
            << (r.success ? 1 : 0) << ',' << fmt9(r.path_length_m) << ','
            << fmt9(r.inefficiency) << ',' << r.checker_calls << ','
            << fmt9(r.wall_time_s) << "\n";
    }
    std::ofstream out(args.out_path);
    if (!out) throw ace::ModelError("benchmark: cannot write '" + args.out_path + "'");
    out << csv.str();
    ace::write_manifest_sidecar(
        args.out_path,
        ace::make_manifest("benchmark",
                           {{"cfa", args.cfa_list},
                            {"maps", args.maps},
                            {"seed", args.seed},
                            {"checkers", args.checkers},
                            {"epsilon_mm", args.epsilon_mm}},
                           {args.rover_path}));

    for (const auto& s : ace::aggregate_benchmark(rows)) {
        std::printf("cfa %4.2f  %-9s success %5.1f%%  inefficiency %6.3f +- %.3f (n=%d)\n",
                    s.cfa, s.checker.c_str(), 100.0 * s.success_rate,
                    s.mean_inefficiency, s.stderr_inefficiency, s.runs);
    }
    return kExitSafe;
}

struct TimingArgs {
    std::string rover_path;
    int poses = 2000;
    std::uint64_t seed = 1;
};

int cmd_timing(const TimingArgs& args) {
    const ace::RoverModel model = ace::load_rover_model(args.rover_path);
    const ace::SafetyThresholds th = ace::default_thresholds(model);
    std::mt19937_64 rng(args.seed);
    std::uniform_real_distribution<double> ux(-6.0, 6.0), uy(-4.0, 4.0), upsi(-kPi, kPi);

    std::vector<ace::Pose2D> poses;
    poses.reserve(args.poses);
    for (int i = 0; i < args.poses; ++i) {
        poses.push_back(ace::make_pose(ux(rng), uy(rng), upsi(rng)));
    }

    struct Stat {
        double mean_us = 0.0;
        double p99_us = 0.0;
    };
    const auto measure = [&](const ace::Dem& dem, auto&& fn) {
        std::vector<double> us(poses.size());
        for (const auto& p : poses) fn(dem, p);  // warm-up
        for (std::size_t i = 0; i < poses.size(); ++i) {
            const auto t0 = std::chrono::steady_clock::now();
            fn(dem, poses[i]);
            us[i] = std::chrono::duration<double, std::micro>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
        }
        std::sort(us.begin(), us.end());
        Stat s;
        for (const double v : us) s.mean_us += v;
        s.mean_us /= static_cast<double>(us.size());
        s.p99_us = us[static_cast<std::size_t>(0.99 * (us.size() - 1))];
        return s;
    };

    const ace::Dem flat = ace::generate_quadratic(0.0, 20.0, 14.0, 0.1);
    const ace::RockFieldResult rocky =
        ace::generate_rock_field(0.20, 20.0, 14.0, 0.1, args.seed);

    volatile long sink = 0;
    const auto run_ace = [&](const ace::Dem& dem, const ace::Pose2D& p) {
        const ace::Evaluation ev = ace::evaluate_pose(dem, p, model, th, 0.0);
        sink = sink + (ev.verdict.overall == ace::SafetyVerdict::Overall::Safe ? 1 : 0);
    };
    // Point-list plane-fit estimator over a ~200-point window at 0.1 m
    // resolution.
    const auto run_planefit = [&](const ace::Dem& dem, const ace::Pose2D& p) {
        const ace::PlanefitEstimate e = ace::planefit_points_estimate(dem, p, model, 0.8);
        sink = sink + static_cast<long>(e.clearance * 1000.0);
    };

    const Stat ace_flat = measure(flat, run_ace);
    const Stat ace_rock = measure(rocky.dem, run_ace);
    const Stat pf_flat = measure(flat, run_planefit);
    const Stat pf_rock = measure(rocky.dem, run_planefit);

    const double mean_of_means = 0.5 * (ace_flat.mean_us + ace_rock.mean_us);
    const double dev = std::sqrt(0.5 * (std::pow(ace_flat.mean_us - mean_of_means, 2) +
                                        std::pow(ace_rock.mean_us - mean_of_means, 2)));
    nlohmann::json out;
    out["poses"] = args.poses;
    out["ace"] = {{"flat", {{"mean_us", ace_flat.mean_us}, {"p99_us", ace_flat.p99_us}}},
                  {"cfa20", {{"mean_us", ace_rock.mean_us}, {"p99_us", ace_rock.p99_us}}},
                  {"mean_cv", dev / mean_of_means}};
    out["planefit_200pt"] = {
        {"flat", {{"mean_us", pf_flat.mean_us}, {"p99_us", pf_flat.p99_us}}},
        {"cfa20", {{"mean_us", pf_rock.mean_us}, {"p99_us", pf_rock.p99_us}}}};
    out["speedup_vs_planefit"] =
        0.5 * (pf_flat.mean_us + pf_rock.mean_us) / mean_of_means;
    out["manifest"] = ace::make_manifest(
        "timing", {{"poses", args.poses}, {"seed", args.seed}}, {args.rover_path});
    std::cout << out.dump(2) << "\n";
    return kExitSafe;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Conservative rover clearance evaluation toolkit"};
    app.require_subcommand(1);

    CommonEvalArgs eval_args;
    CLI::App* evaluate = app.add_subcommand(
        "evaluate", "Evaluate one pose: state bounds + safety verdict as JSON");
    evaluate->add_option("--dem", eval_args.dem_path, "ESRI ASCII grid")->required();
    evaluate->add_option("--rover", eval_args.rover_path, "rover model file")->required();
    evaluate->add_option("--pose", eval_args.pose_text, "x,y,psi_deg")->required();
    evaluate->add_option("--epsilon-mm", eval_args.epsilon_mm,
                         "perception height margin [mm]");
    evaluate->add_option("--min-clearance", eval_args.min_clearance,
                         "clearance threshold [m]");
    evaluate->add_option("--max-tilt-deg", eval_args.max_tilt_deg, "tilt threshold [deg]");
    evaluate->add_option("--max-wheel-drop", eval_args.max_wheel_drop,
                         "wheel drop threshold [m]; default wheel radius");

    SweepArgs sweep_args;
    CLI::App* sweep = app.add_subcommand(
        "sweep", "Quadratic-terrain sweep: bounds vs settled truth vs plane fit");
    sweep->add_option("--rover", sweep_args.rover_path)->required();
    sweep->add_option("--a-min", sweep_args.a_min, "lowest curvature [1/m]");
    sweep->add_option("--a-max", sweep_args.a_max, "highest curvature [1/m]");
    sweep->add_option("--steps", sweep_args.steps)->check(CLI::PositiveNumber);
    sweep->add_option("--extent-x", sweep_args.extent_x);
    sweep->add_option("--extent-y", sweep_args.extent_y);
    sweep->add_option("--resolution", sweep_args.resolution);
    sweep->add_option("--epsilon-mm", sweep_args.epsilon_mm);
    sweep->add_option("--noise-sigma-mm", sweep_args.noise_sigma_mm);
    sweep->add_option("--seed", sweep_args.seed);
    sweep->add_option("--out", sweep_args.out_path, "output CSV")->required();

    DriveArgs drive_args;
    CLI::App* drive = app.add_subcommand(
        "drive", "Replay a waypoint path: settled truth against the bounds");
    drive->add_option("--dem", drive_args.dem_path)->required();
    drive->add_option("--rover", drive_args.rover_path)->required();
    drive->add_option("--waypoints", drive_args.waypoints, "x0,y0;x1,y1;...")->required();
    drive->add_option("--step", drive_args.step)->check(CLI::PositiveNumber);
    drive->add_option("--epsilon-mm", drive_args.epsilon_mm);
    drive->add_option("--noise-sigma-mm", drive_args.noise_sigma_mm);
    drive->add_option("--seed", drive_args.seed);
    drive->add_option("--out", drive_args.out_path, "output CSV")->required();

    GenTerrainArgs gen_args;
    CLI::App* gen = app.add_subcommand("gen-terrain", "Generate a terrain file");
    gen->add_option("--type", gen_args.type, "flat|quadratic|bump|slope|rock-field");
    gen->add_option("--extent-x", gen_args.extent_x);
    gen->add_option("--extent-y", gen_args.extent_y);
    gen->add_option("--resolution", gen_args.resolution);
    gen->add_option("--a", gen_args.a, "quadratic curvature [1/m]");
    gen->add_option("--bump-height", gen_args.bump_height);
    gen->add_option("--bump-x", gen_args.bump_x);
    gen->add_option("--bump-y", gen_args.bump_y);
    gen->add_option("--bump-radius", gen_args.bump_radius);
    gen->add_option("--slope-deg", gen_args.slope_deg);
    gen->add_option("--cfa", gen_args.cfa, "rock coverage fraction");
    gen->add_option("--seed", gen_args.seed);
    gen->add_option("--out", gen_args.out_path, "output .asc path")->required();

    BenchmarkArgs bench_args;
    CLI::App* bench =
        app.add_subcommand("benchmark", "Planner comparison on random rock fields");
    bench->add_option("--rover", bench_args.rover_path)->required();
    bench->add_option("--cfa", bench_args.cfa_list, "comma list of coverage fractions");
    bench->add_option("--maps", bench_args.maps)->check(CLI::PositiveNumber);
    bench->add_option("--seed", bench_args.seed);
    bench->add_option("--checker", bench_args.checkers, "comma list: ace,planefit,ideal");
    bench->add_option("--threads", bench_args.threads)->check(CLI::PositiveNumber);
    bench->add_option("--epsilon-mm", bench_args.epsilon_mm);
    bench->add_option("--min-clearance", bench_args.min_clearance);
    bench->add_option("--max-tilt-deg", bench_args.max_tilt_deg);
    bench->add_option("--suspension-range", bench_args.suspension_range,
                      "symmetric suspension gate [rad]; default model limits");
    bench->add_option("--max-wheel-drop", bench_args.max_wheel_drop,
                      "wheel drop gate [m]; default wheel radius");
    bench->add_option("--pf-step", bench_args.pf_step, "plane-fit step gate [m]");
    bench->add_option("--pf-roughness", bench_args.pf_roughness,
                      "plane-fit roughness gate [m]");
    bench->add_option("--pf-window", bench_args.pf_window,
                      "plane-fit goodness window radius [m]");
    bench->add_option("--out", bench_args.out_path, "output CSV")->required();

    TimingArgs timing_args;
    CLI::App* timing = app.add_subcommand(
        "timing", "Per-pose latency of the bound evaluation vs plane fitting");
    timing->add_option("--rover", timing_args.rover_path)->required();
    timing->add_option("--poses", timing_args.poses)->check(CLI::PositiveNumber);
    timing->add_option("--seed", timing_args.seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (evaluate->parsed()) return cmd_evaluate(eval_args);
        if (sweep->parsed()) return cmd_sweep(sweep_args);
        if (drive->parsed()) return cmd_drive(drive_args);
        if (gen->parsed()) return cmd_gen_terrain(gen_args);
        if (bench->parsed()) return cmd_benchmark(bench_args);
        if (timing->parsed()) return cmd_timing(timing_args);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitUsage;
}
