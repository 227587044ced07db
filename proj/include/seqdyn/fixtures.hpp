#pragma once

#include <map>
#include <string>
#include <vector>

#include "seqdyn/game.hpp"
#include "seqdyn/preferences.hpp"

namespace seqdyn {

// The example documents shipped in tests/fixtures, compiled into the library.
const std::map<std::string, std::string>& fixture_documents();
std::vector<std::string> fixture_names();

// Throws InputError for unknown names.
const std::string& fixture_document(const std::string& name);
// Throws InputError when the document has no "tree".
Game fixture_game(const std::string& name);
// Preferences of a game document or of a preference-only document.
PreferenceProfile fixture_preferences(const std::string& name);

}  // namespace seqdyn
