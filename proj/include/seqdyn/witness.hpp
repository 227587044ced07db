#pragma once

#include "seqdyn/game.hpp"
#include "seqdyn/preferences.hpp"

namespace seqdyn {

// Games built over `p` from a pattern witness. Every player and outcome of
// `p` is declared, so the result carries `p` unchanged.
//
// Main pattern: i chooses between y (l) and a node of j choosing between
// x (l) and z (r).
Game main_pattern_game(const PreferenceProfile& p, const MainPatternWitness& w);

// Secondary pattern: i chooses between x (l) and a node of j choosing between
// w (l) and a node of i choosing between z (l) and y (r).
Game secondary_pattern_game(const PreferenceProfile& p,
                            const SecondaryPatternWitness& w);

}  // namespace seqdyn
