#pragma once

#include <string>

#include <json.hpp>

#include "fairdiv/valuation.hpp"

namespace fairdiv {

// Schema: {"n": int, "m": int, "agents": [ {...kind-specific...} ]}.
// Unknown fields are rejected and the agents array length must equal n.
Instance instance_from_json(const nlohmann::json& j);
nlohmann::json instance_to_json(const Instance& inst);

// Canonical text form (2-space indent, sorted keys, trailing newline); a
// load/serialize round trip of a file produced here is byte-identical.
std::string instance_to_string(const Instance& inst);

Instance load_instance(const std::string& path);
void save_instance(const Instance& inst, const std::string& path);

}  // namespace fairdiv
