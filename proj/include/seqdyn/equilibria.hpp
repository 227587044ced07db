#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "seqdyn/game.hpp"

namespace seqdyn {

// A profitable unilateral deviation: `player` switching from the checked
// profile to `profile`.
struct Deviation {
  PlayerIndex player;
  StrategyProfile profile;
};

struct NashCheck {
  bool holds = true;
  std::optional<Deviation> witness;
};

// A deviation in the subgame rooted at `node`; `deviation.profile` is the
// full profile of the original game with the deviating player's choices
// replaced inside that subtree.
struct SubgameDeviation {
  NodeIndex node;
  Deviation deviation;
};

struct SpeCheck {
  bool holds = true;
  std::optional<SubgameDeviation> witness;
};

// A joint deviation that strictly improves every coalition member.
struct CoalitionDeviation {
  std::vector<PlayerIndex> coalition;
  StrategyProfile profile;
};

struct SneCheck {
  bool holds = true;
  std::optional<CoalitionDeviation> witness;
};

// All three checkers enumerate every replacement strategy literally, including
// off-path nodes and the player's current strategy.
NashCheck is_nash(const Game& g, const StrategyProfile& s);
SpeCheck is_spe(const Game& g, const StrategyProfile& s);
// Throws CapExceeded when the number of joint deviations to examine is above
// `cap`.
SneCheck is_sne(const Game& g, const StrategyProfile& s,
                std::uint64_t cap = kDefaultProfileCap);

struct EquilibriumSets {
  std::vector<StrategyProfile> ne;
  std::vector<StrategyProfile> spe;
  std::vector<StrategyProfile> sne;
};

EquilibriumSets equilibrium_sets(const Game& g,
                                 std::uint64_t cap = kDefaultProfileCap);

// Number of joint deviations is_sne examines for one profile.
std::uint64_t coalition_deviation_count(const Game& g);

}  // namespace seqdyn
