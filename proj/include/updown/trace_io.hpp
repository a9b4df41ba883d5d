#pragma once

#include <string>

#include <json.hpp>

#include "updown/rewrite.hpp"

namespace updown {

inline std::string family_name(RuleFamily f) {
  switch (f) {
    case RuleFamily::CommUU: return "COMM_UU";
    case RuleFamily::CommDD: return "COMM_DD";
    case RuleFamily::CommDU: return "COMM_DU";
    case RuleFamily::Cancel1: return "CANCEL_1";
    case RuleFamily::Slide: return "SLIDE";
  }
  return "?";
}

// Canonical serialization:
// {"start": "...", "end": "...",
//  "steps": [{"family": "SLIDE", "i": 1, "pos": 0, "dir": "F"}, ...]}
// COMM_* steps carry "i" and "j", SLIDE carries "i", CANCEL_1 neither.
inline nlohmann::ordered_json trace_to_json(const Trace& t) {
  nlohmann::ordered_json j;
  j["start"] = to_string(t.start);
  j["end"] = to_string(t.end);
  j["steps"] = nlohmann::ordered_json::array();
  for (const Step& s : t.steps) {
    nlohmann::ordered_json js;
    js["family"] = family_name(s.rule.family);
    switch (s.rule.family) {
      case RuleFamily::CommUU:
      case RuleFamily::CommDD:
      case RuleFamily::CommDU:
        js["i"] = s.rule.i;
        js["j"] = s.rule.j;
        break;
      case RuleFamily::Slide:
        js["i"] = s.rule.i;
        break;
      case RuleFamily::Cancel1:
        break;
    }
    js["pos"] = s.pos;
    js["dir"] = s.dir == StepDir::Forward ? "F" : "B";
    j["steps"].push_back(std::move(js));
  }
  return j;
}

inline std::string trace_to_string(const Trace& t) { return trace_to_json(t).dump(); }

namespace detail {

inline int require_int(const nlohmann::json& j, const std::string& key,
                       const std::string& where) {
  if (!j.contains(key))
    throw ParseError("trace: missing field '" + key + "' in " + where);
  if (!j[key].is_number_integer())
    throw ParseError("trace: field '" + key + "' must be an integer in " + where);
  return j[key].get<int>();
}

}  // namespace detail

// Strict parser for the canonical serialization.  Field order is irrelevant;
// unknown fields are rejected.
inline Trace trace_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("trace: top level must be an object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "start" && key != "end" && key != "steps")
      throw ParseError("trace: unknown field '" + key + "'");
  }
  if (!j.contains("start") || !j.contains("end") || !j.contains("steps"))
    throw ParseError("trace: required fields are 'start', 'end', 'steps'");
  if (!j["start"].is_string() || !j["end"].is_string())
    throw ParseError("trace: 'start' and 'end' must be word strings");
  if (!j["steps"].is_array()) throw ParseError("trace: 'steps' must be an array");

  Trace t;
  t.start = parse_word(j["start"].get<std::string>());
  t.end = parse_word(j["end"].get<std::string>());
  std::size_t idx = 0;
  for (const auto& js : j["steps"]) {
    const std::string where = "step " + std::to_string(idx);
    if (!js.is_object()) throw ParseError("trace: " + where + " must be an object");
    if (!js.contains("family") || !js["family"].is_string())
      throw ParseError("trace: missing family in " + where);
    const std::string fam = js["family"].get<std::string>();
    Step s;
    bool has_i = false, has_j = false;
    if (fam == "COMM_UU") { s.rule.family = RuleFamily::CommUU; has_i = has_j = true; }
    else if (fam == "COMM_DD") { s.rule.family = RuleFamily::CommDD; has_i = has_j = true; }
    else if (fam == "COMM_DU") { s.rule.family = RuleFamily::CommDU; has_i = has_j = true; }
    else if (fam == "CANCEL_1") { s.rule.family = RuleFamily::Cancel1; }
    else if (fam == "SLIDE") { s.rule.family = RuleFamily::Slide; has_i = true; }
    else throw ParseError("trace: unknown family '" + fam + "' in " + where);

    for (const auto& [key, value] : js.items()) {
      (void)value;
      if (key == "family" || key == "pos" || key == "dir") continue;
      if (key == "i" && has_i) continue;
      if (key == "j" && has_j) continue;
      throw ParseError("trace: unknown field '" + key + "' in " + where);
    }
    if (has_i) s.rule.i = detail::require_int(js, "i", where);
    if (has_j) s.rule.j = detail::require_int(js, "j", where);
    const int pos = detail::require_int(js, "pos", where);
    if (pos < 0) throw ParseError("trace: negative pos in " + where);
    s.pos = static_cast<std::size_t>(pos);
    if (!js.contains("dir") || !js["dir"].is_string())
      throw ParseError("trace: missing dir in " + where);
    const std::string dir = js["dir"].get<std::string>();
    if (dir == "F") s.dir = StepDir::Forward;
    else if (dir == "B") s.dir = StepDir::Backward;
    else throw ParseError("trace: dir must be \"F\" or \"B\" in " + where);
    t.steps.push_back(s);
    ++idx;
  }
  return t;
}

inline Trace trace_from_string(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("trace: invalid JSON: ") + e.what());
  }
  return trace_from_json(j);
}

}  // namespace updown
