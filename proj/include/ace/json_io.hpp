#pragma once

#include <json.hpp>

#include "ace/bounds.hpp"
#include "ace/oracle.hpp"

namespace ace {

/// Stable JSON schema used by the CLI and golden tests. All angles are in
/// radians and all lengths in meters.
nlohmann::json to_json(const Interval& v);
nlohmann::json to_json(const StateBounds& b, const RoverModel& model);
nlohmann::json to_json(const SafetyVerdict& v);
nlohmann::json to_json(const Evaluation& ev, const RoverModel& model);
nlohmann::json to_json(const SettleResult& s, const RoverModel& model);

}  // namespace ace
