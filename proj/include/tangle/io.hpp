#pragma once

#include <string>

#include <json.hpp>

#include "tangle/kripke.hpp"
#include "tangle/topo.hpp"

namespace tangle {

// Model files: {"worlds": [ids], "rel": [[id, id], ...], "val": {atom: [ids]}}.
// "val" may be omitted.  Errors are FormatError naming the offending entry.
KripkeModel model_from_json(const nlohmann::json& j);
nlohmann::json model_to_json(const KripkeModel& m);

// Space files: {"points": [ids], "opens": [[ids], ...], "val": {...}}.
TopoModel space_from_json(const nlohmann::json& j);
nlohmann::json space_to_json(const TopoModel& m);

// Ids of the members of s, in carrier order.
nlohmann::json ids_json(const std::vector<std::string>& ids, const WorldSet& s);

nlohmann::json read_json_file(const std::string& path);

}  // namespace tangle
