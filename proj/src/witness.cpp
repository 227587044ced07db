#include "seqdyn/witness.hpp"

#include "seqdyn/error.hpp"

namespace seqdyn {

namespace {

struct Builder {
  const PreferenceProfile& p;
  GameDescription d;

  explicit Builder(const PreferenceProfile& prefs) : p(prefs) {
    d.extra_players = p.players;
    d.extra_outcomes = p.outcomes;
  }

  void decide(const std::vector<std::string>& path, PlayerIndex who) {
    d.nodes.push_back(NodeId{path});
    d.owner[NodeId{path}] = p.players.at(who);
  }
  void leaf(const std::vector<std::string>& path, OutcomeIndex o) {
    d.nodes.push_back(NodeId{path});
    d.payoff[NodeId{path}] = p.outcomes.at(o);
  }
  Game build() { return Game::from_description(d).with_preferences(p); }
};

}  // namespace

Game main_pattern_game(const PreferenceProfile& p,
                       const MainPatternWitness& w) {
  Builder b(p);
  b.decide({}, w.i);
  b.leaf({"l"}, w.y);
  b.decide({"r"}, w.j);
  b.leaf({"r", "l"}, w.x);
  b.leaf({"r", "r"}, w.z);
  return b.build();
}

Game secondary_pattern_game(const PreferenceProfile& p,
                            const SecondaryPatternWitness& w) {
  Builder b(p);
  b.decide({}, w.i);
  b.leaf({"l"}, w.x);
  b.decide({"r"}, w.j);
  b.leaf({"r", "l"}, w.w);
  b.decide({"r", "r"}, w.i);
  b.leaf({"r", "r", "l"}, w.z);
  b.leaf({"r", "r", "r"}, w.y);
  return b.build();
}

}  // namespace seqdyn
