#pragma once

// Tower-spec JSON files and JSON serialization of results. Output objects
// use nlohmann::json, whose default object type keeps keys sorted.

#include <filesystem>
#include <string_view>

#include <json.hpp>

#include "kflag/flag_engine.hpp"
#include "kflag/groebner.hpp"
#include "kflag/tower.hpp"

namespace kflag {

/// Throws SchemaError naming the offending field, or the Stage constructor's
/// errors for bad stage data. Does not run Tower::validate.
TowerSpec parse_tower_spec(std::string_view json_text);
/// Throws IoError if the file cannot be read.
TowerSpec load_tower_spec(const std::filesystem::path& path);
inline Tower load_tower(const std::filesystem::path& path) { return Tower::validate(load_tower_spec(path)); }

nlohmann::json to_json(const TowerSpec& spec);
nlohmann::json to_json(const Presentation& p);
nlohmann::json to_json(const BasisVector& v);
nlohmann::json to_json(const RankReport& r);
nlohmann::json to_json(const QuotientEngine& engine, const MultTable& table);

}  // namespace kflag
