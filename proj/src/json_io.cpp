#include "ace/json_io.hpp"

namespace ace {

using nlohmann::json;

json to_json(const Interval& v) { return json{{"lo", v.lo}, {"hi", v.hi}}; }

json to_json(const StateBounds& b, const RoverModel& model) {
    json j;
    j["delta"] = to_json(b.delta);
    if (model.is_rocker_bogie()) {
        j["beta_l"] = to_json(b.beta_l);
        j["beta_r"] = to_json(b.beta_r);
        j["z_b_l"] = to_json(b.z_b_l);
        j["z_b_r"] = to_json(b.z_b_r);
    }
    j["z_d_l"] = to_json(b.z_d_l);
    j["z_d_r"] = to_json(b.z_d_r);
    j["phi"] = to_json(b.phi);
    j["theta"] = to_json(b.theta);
    j["abs_phi"] = to_json(b.abs_phi);
    j["abs_theta"] = to_json(b.abs_theta);
    j["z_o"] = to_json(b.z_o);
    j["z_p"] = to_json(b.z_p);
    j["clearance"] = to_json(b.clearance);
    j["wheel_drop"] = b.wheel_drop;
    return j;
}

namespace {

json metric_json(const MetricCheck& m) {
    return json{{"pass", m.pass}, {"worst", m.worst}};
}

}  // namespace

json to_json(const SafetyVerdict& v) {
    const char* overall = "unevaluatable";
    if (v.overall == SafetyVerdict::Overall::Safe) overall = "safe";
    if (v.overall == SafetyVerdict::Overall::Unsafe) overall = "unsafe";
    json j;
    j["overall"] = overall;
    j["clearance"] = metric_json(v.clearance);
    j["tilt"] = metric_json(v.tilt);
    j["suspension"] = metric_json(v.suspension);
    j["wheel_drop"] = metric_json(v.wheel_drop);
    if (!v.reason.empty()) j["reason"] = v.reason;
    return j;
}

json to_json(const Evaluation& ev, const RoverModel& model) {
    json j;
    j["verdict"] = to_json(ev.verdict);
    if (ev.bounds_valid) j["state_bounds"] = to_json(ev.bounds, model);
    if (ev.wheels_valid) {
        json w;
        int count = 0;
        const auto wheels = model.active_wheels(count);
        static const char* kNames[] = {"fl", "fr", "ml", "mr", "rl", "rr"};
        for (int i = 0; i < count; ++i) {
            w[kNames[wheels[i]]] = to_json(ev.wheels.at(wheels[i]));
        }
        w["epsilon"] = ev.wheels.epsilon;
        j["wheel_intervals"] = w;
    }
    return j;
}

json to_json(const SettleResult& s, const RoverModel& model) {
    json j;
    j["converged"] = s.converged;
    j["iterations"] = s.iterations;
    j["residual"] = s.residual;
    j["limits_exceeded"] = s.limits_exceeded;
    j["phi"] = s.body.phi;
    j["theta"] = s.body.theta;
    j["z_o"] = s.body.z_o;
    j["z_p"] = s.body.z_p;
    j["delta_l"] = s.suspension.delta_l;
    j["delta_r"] = s.suspension.delta_r;
    if (model.is_rocker_bogie()) {
        j["beta_l"] = s.suspension.beta_l;
        j["beta_r"] = s.suspension.beta_r;
    }
    json contacts = json::array();
    int count = 0;
    const auto wheels = model.active_wheels(count);
    for (int i = 0; i < count; ++i) {
        const Vec3& c = s.contacts[wheels[i]];
        contacts.push_back(json{{"x", c.x}, {"y", c.y}, {"z", c.z}});
    }
    j["contacts"] = contacts;
    return j;
}

}  // namespace ace
