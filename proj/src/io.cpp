#include "tangle/io.hpp"

#include <fstream>
#include <map>

namespace tangle {

namespace {

using nlohmann::json;

const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw FormatError("expected a JSON object at top level");
  auto it = j.find(key);
  if (it == j.end()) throw FormatError(std::string("missing field \"") + key + "\"");
  return *it;
}

std::vector<std::string> string_list(const json& j, const std::string& what) {
  if (!j.is_array()) throw FormatError(what + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) throw FormatError(what + " must contain only strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

Valuation read_val(const json& j, const std::vector<std::string>& ids, const char* kind) {
  Valuation val;
  if (j.is_null()) return val;
  if (!j.is_object()) throw FormatError("\"val\" must map atoms to arrays of ids");
  std::map<std::string, std::size_t> idx;
  for (std::size_t i = 0; i < ids.size(); ++i) idx.emplace(ids[i], i);
  for (const auto& [a, set] : j.items()) {
    WorldSet s = empty_set(ids.size());
    for (const auto& id : string_list(set, "\"val\"." + a)) {
      auto it = idx.find(id);
      if (it == idx.end())
        throw FormatError("valuation of '" + a + "' mentions unknown " + kind + " '" + id + "'");
      s.set(it->second);
    }
    val.emplace(a, std::move(s));
  }
  return val;
}

json write_val(const Valuation& val, const std::vector<std::string>& ids) {
  json out = json::object();
  for (const auto& [a, s] : val) out[a] = ids_json(ids, s);
  return out;
}

}  // namespace

json ids_json(const std::vector<std::string>& ids, const WorldSet& s) {
  json out = json::array();
  for_each_member(s, [&](std::size_t i) { out.push_back(ids[i]); });
  return out;
}

KripkeModel model_from_json(const json& j) {
  auto worlds = string_list(field(j, "worlds"), "\"worlds\"");
  const json& rel = field(j, "rel");
  if (!rel.is_array()) throw FormatError("\"rel\" must be an array of [id, id] pairs");
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& e : rel) {
    auto p = string_list(e, "\"rel\" entry");
    if (p.size() != 2) throw FormatError("\"rel\" entries must be [id, id] pairs");
    pairs.emplace_back(p[0], p[1]);
  }
  Frame f = Frame::from_pairs(worlds, pairs);
  Valuation val = read_val(j.value("val", json()), worlds, "world");
  return {std::move(f), std::move(val)};
}

json model_to_json(const KripkeModel& m) {
  const auto& ws = m.frame.worlds();
  json rel = json::array();
  for (std::size_t i = 0; i < ws.size(); ++i)
    for_each_member(m.frame.successors(i), [&](std::size_t k) { rel.push_back({ws[i], ws[k]}); });
  return {{"worlds", ws}, {"rel", rel}, {"val", write_val(m.val, ws)}};
}

TopoModel space_from_json(const json& j) {
  auto points = string_list(field(j, "points"), "\"points\"");
  const json& opens = field(j, "opens");
  if (!opens.is_array()) throw FormatError("\"opens\" must be an array of id arrays");
  std::vector<std::vector<std::string>> os;
  for (const auto& o : opens) os.push_back(string_list(o, "\"opens\" entry"));
  FiniteSpace s = FiniteSpace::from_ids(points, os);
  Valuation val = read_val(j.value("val", json()), points, "point");
  return {std::move(s), std::move(val)};
}

json space_to_json(const TopoModel& m) {
  const auto& ps = m.space.points();
  json opens = json::array();
  for (const auto& o : m.space.opens()) opens.push_back(ids_json(ps, o));
  return {{"points", ps}, {"opens", opens}, {"val", write_val(m.val, ps)}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError("'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace tangle
