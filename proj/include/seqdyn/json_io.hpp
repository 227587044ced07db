#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "seqdyn/game.hpp"
#include "seqdyn/preferences.hpp"

namespace seqdyn {

using Json = nlohmann::ordered_json;

// Game documents:
//   {"tree": T, "preferences": P, "players": [...]?, "outcomes": [...]?}
//   T := {"outcome": "<label>"} | {"player": "<id>", "moves": {"<a>": T, ...}}
//   P := {"<id>": {"pairs": [["a","b"], ...]} | {"ranking": [[...], ...]}}
// Throws InputError on malformed documents or invalid games.
Game load_game(const std::string& document);
Game load_game_file(const std::filesystem::path& path);

// Inverse of load_game; preferences are written as explicit pairs.
Json game_to_json(const Game& g);

// Preference-only documents use the same "preferences" object plus an
// "outcomes" list: {"outcomes": [...], "preferences": P}.
PreferenceProfile load_preference_profile(const Json& doc);
Json preference_profile_to_json(const PreferenceProfile& p);

}  // namespace seqdyn
