#pragma once

// JSON forms of instances and plans.
//
// Instance: {"dims":[m1,m2], "kind":"labeled", "pi":[...]} or
//           {"dims":[m1,m2], "kind":"typed", "start_types":[...],
//            "goal_types":[...], "k":K}, optionally "rest":cell.
// Plan:     {"steps":[{"cell":c, "action":"pick"|"swap"|"place"}, ...]}

#include <istream>
#include <string>
#include <vector>

#include <json.hpp>

#include "core.hpp"

namespace lattice_rearrange {

using json = nlohmann::json;

inline constexpr int format_version = 1;

inline rearrange_error malformed_json(const std::string& what) { return {"MalformedJson", what}; }

namespace detail {

inline const json& require_field(const json& j, const char* name) {
  if (!j.is_object()) throw malformed_json("expected a JSON object");
  const auto it = j.find(name);
  if (it == j.end()) throw malformed_json(std::string("missing field \"") + name + "\"");
  return *it;
}

inline int as_int(const json& j, const char* what) {
  if (!j.is_number_integer()) throw malformed_json(std::string(what) + " must be an integer");
  const auto v = j.get<long long>();
  if (v < -2147483647LL || v > 2147483647LL) throw malformed_json(std::string(what) + " out of range");
  return static_cast<int>(v);
}

inline std::vector<int> as_int_array(const json& j, const char* what) {
  if (!j.is_array()) throw malformed_json(std::string(what) + " must be an array");
  std::vector<int> out;
  out.reserve(j.size());
  for (const auto& v : j) out.push_back(as_int(v, what));
  return out;
}

}  // namespace detail

inline json to_json(const Instance& inst) {
  json j;
  j["format_version"] = format_version;
  j["dims"] = {inst.dims.m1, inst.dims.m2};
  if (inst.labeled()) {
    j["kind"] = "labeled";
    j["pi"] = inst.start;
  } else {
    j["kind"] = "typed";
    j["start_types"] = inst.start;
    j["goal_types"] = inst.goal;
    j["k"] = inst.types;
  }
  j["rest"] = inst.rest;
  return j;
}

inline Instance instance_from_json(const json& j) {
  const auto dims_v = detail::as_int_array(detail::require_field(j, "dims"), "dims");
  if (dims_v.size() != 2) throw malformed_json("dims must be [m1, m2]");
  const LatticeDims dims{dims_v[0], dims_v[1]};
  check_dims(dims);
  if (static_cast<long long>(dims.m1) * dims.m2 > 100000000LL) throw invalid_instance("lattice too large");
  const int rest = j.contains("rest") ? detail::as_int(j["rest"], "rest") : 1;
  std::string kind;
  if (j.contains("kind")) {
    if (!j["kind"].is_string()) throw malformed_json("kind must be a string");
    kind = j["kind"].get<std::string>();
  } else {
    kind = j.contains("pi") ? "labeled" : "typed";
  }
  if (kind == "labeled") return make_labeled(dims, detail::as_int_array(detail::require_field(j, "pi"), "pi"), rest);
  if (kind != "typed") throw malformed_json("kind must be \"labeled\" or \"typed\"");
  auto start = detail::as_int_array(detail::require_field(j, "start_types"), "start_types");
  auto goal = detail::as_int_array(detail::require_field(j, "goal_types"), "goal_types");
  const int k = j.contains("k") ? detail::as_int(j["k"], "k") : 0;
  if (j.contains("k") && k < 1) throw invalid_instance("k must be positive");
  return make_typed(dims, std::move(start), std::move(goal), k, rest);
}

inline json to_json(const Plan& plan) {
  json steps = json::array();
  for (const auto& s : plan.steps) steps.push_back({{"cell", s.cell}, {"action", to_string(s.action)}});
  json j;
  j["format_version"] = format_version;
  j["steps"] = std::move(steps);
  return j;
}

inline json to_json(const PlanCost& cost) {
  return {{"picks", cost.picks}, {"travel", cost.travel}, {"total", cost.total}};
}

inline Plan plan_from_json(const json& j) {
  const auto& steps = detail::require_field(j, "steps");
  if (!steps.is_array()) throw malformed_json("steps must be an array");
  Plan plan;
  for (const auto& s : steps) {
    const int cell = detail::as_int(detail::require_field(s, "cell"), "cell");
    const auto& a = detail::require_field(s, "action");
    if (!a.is_string()) throw malformed_json("action must be a string");
    const auto name = a.get<std::string>();
    if (name == "pick") plan.pick(cell);
    else if (name == "swap") plan.swap(cell);
    else if (name == "place") plan.place(cell);
    else throw malformed_json("unknown action \"" + name + "\"");
  }
  return plan;
}

inline json parse_json(std::istream& in) {
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw malformed_json(e.what());
  }
}

inline json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw malformed_json(e.what());
  }
}

}  // namespace lattice_rearrange
