#include "kflag/tower_io.hpp"

#include <climits>
#include <fstream>
#include <sstream>

#include "kflag/errors.hpp"

namespace kflag {

using nlohmann::json;

namespace {

int as_int(const json& v, const std::string& field) {
  if (!v.is_number_integer()) throw SchemaError(field + " must be an integer");
  if (v.is_number_unsigned() ? v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT_MAX)
                             : (v.get<std::int64_t>() > INT_MAX || v.get<std::int64_t>() < INT_MIN)) {
    throw SchemaError(field + " is out of range");
  }
  return v.get<int>();
}

int stage_key(const std::string& key, const std::string& field) {
  if (key.empty() || key.size() > 9 || key.find_first_not_of("0123456789") != std::string::npos || key[0] == '0') {
    throw SchemaError(field + " key '" + key + "' must be a positive decimal stage index");
  }
  return std::stoi(key);
}

Stage parse_stage(const json& s, const std::string& field) {
  if (!s.is_object()) throw SchemaError(field + " must be an object");
  for (const auto& [key, value] : s.items()) {
    if (key != "family" && key != "vars" && key != "blocks") throw SchemaError(field + "." + key + " is not a known field");
  }
  if (!s.contains("family")) throw SchemaError(field + ".family is required");
  if (!s.contains("vars")) throw SchemaError(field + ".vars is required");
  if (!s["family"].is_string()) throw SchemaError(field + ".family must be a string");
  const Family family = parse_family(s["family"].get<std::string>());
  const int vars = as_int(s["vars"], field + ".vars");
  std::vector<int> blocks;
  if (s.contains("blocks")) {
    const json& b = s["blocks"];
    if (!b.is_array()) throw SchemaError(field + ".blocks must be an array of integers");
    for (std::size_t k = 0; k < b.size(); ++k) blocks.push_back(as_int(b[k], field + ".blocks[" + std::to_string(k) + "]"));
  }
  return Stage(family, vars, std::move(blocks));
}

IntMatrix parse_matrix(const json& a, const std::string& field) {
  if (!a.is_array()) throw SchemaError(field + " must be an array of rows");
  IntMatrix out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::string row_field = field + "[" + std::to_string(i) + "]";
    if (!a[i].is_array()) throw SchemaError(row_field + " must be an array of integers");
    std::vector<int> row;
    for (std::size_t s = 0; s < a[i].size(); ++s) row.push_back(as_int(a[i][s], row_field + "[" + std::to_string(s) + "]"));
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

TowerSpec parse_tower_spec(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("tower spec must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "version" && key != "stages" && key != "maps") throw SchemaError(key + " is not a known field");
  }
  if (doc.contains("version") && (!doc["version"].is_number_integer() || doc["version"].get<std::int64_t>() != 1)) {
    throw SchemaError("version must be 1");
  }
  if (!doc.contains("stages")) throw SchemaError("stages is required");
  if (!doc["stages"].is_array()) throw SchemaError("stages must be an array");

  TowerSpec spec;
  const json& stages = doc["stages"];
  for (std::size_t k = 0; k < stages.size(); ++k) spec.stages.push_back(parse_stage(stages[k], "stages[" + std::to_string(k) + "]"));

  if (doc.contains("maps")) {
    const json& maps = doc["maps"];
    if (!maps.is_object()) throw SchemaError("maps must be an object");
    for (const auto& [jkey, inner] : maps.items()) {
      const std::string jfield = "maps." + jkey;
      const int j = stage_key(jkey, "maps");
      if (!inner.is_object()) throw SchemaError(jfield + " must be an object");
      for (const auto& [lkey, a] : inner.items()) {
        const int l = stage_key(lkey, jfield);
        spec.maps[{j, l}] = parse_matrix(a, jfield + "." + lkey);
      }
    }
  }
  return spec;
}

TowerSpec load_tower_spec(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read tower spec " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_tower_spec(text.str());
  } catch (const SchemaError& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
}

json to_json(const TowerSpec& spec) {
  json out = json::object();
  out["version"] = 1;
  out["stages"] = json::array();
  for (const auto& s : spec.stages) {
    json stage = {{"family", std::string(to_string(s.family()))}, {"vars", s.vars()}};
    if (!s.is_borel()) stage["blocks"] = s.blocks();
    out["stages"].push_back(std::move(stage));
  }
  json maps = json::object();
  for (const auto& [key, a] : spec.maps) maps[std::to_string(key.first)][std::to_string(key.second)] = a;
  if (!maps.empty()) out["maps"] = std::move(maps);
  return out;
}

json to_json(const Presentation& p) {
  json out = json::object();
  out["mode"] = std::string(to_string(p.mode));
  out["generators"] = json::array();
  for (const auto& g : p.ring_generators) out["generators"].push_back(to_string(g));
  out["relations"] = json::array();
  for (const auto& r : p.relations) out["relations"].push_back(to_string(r));
  return out;
}

json to_json(const BasisVector& v) {
  json out = json::object();
  for (const auto& [m, c] : v.coordinates()) out[to_string(m)] = to_string(c);
  return out;
}

json to_json(const RankReport& r) {
  json out = json::object();
  out["tower"] = r.tower;
  out["expected"] = r.expected;
  if (r.computed) {
    out["computed"] = *r.computed;
  } else {
    out["computed"] = "infinite";
  }
  out["pass"] = r.pass;
  out["basis_size"] = r.basis_size;
  out["elapsed_ms"] = r.elapsed_ms;
  return out;
}

json to_json(const QuotientEngine& engine, const MultTable& table) {
  json out = json::object();
  out["mode"] = std::string(to_string(engine.mode()));
  out["basis"] = json::array();
  for (const auto& m : engine.basis()) out["basis"].push_back(to_string(m));
  out["table"] = json::array();
  for (const auto& row : table) {
    json r = json::array();
    for (const auto& v : row) r.push_back(to_json(v));
    out["table"].push_back(std::move(r));
  }
  return out;
}

}  // namespace kflag
