#pragma once

#include <string>
#include <vector>

#include "seqdyn/dynamics.hpp"
#include "seqdyn/fixtures.hpp"
#include "seqdyn/game.hpp"

namespace seqdyn::test {

inline StrategyProfile P(const Game& g, const std::string& name) {
  return parse_profile(g, name);
}

inline std::vector<std::string> names(const Game& g,
                                      const std::vector<StrategyProfile>& v) {
  std::vector<std::string> out;
  for (const auto& s : v) out.push_back(profile_name(g, s));
  return out;
}

inline std::vector<std::pair<std::string, std::string>> edge_names(
    const Game& g, const DynamicsGraph& graph) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& e : graph.edges) {
    out.emplace_back(profile_name(g, graph.vertices[e.from]),
                     profile_name(g, graph.vertices[e.to]));
  }
  return out;
}

inline DynamicsGraph graph_of(const Game& g, std::set<Property> props) {
  return build_graph(g, DynamicsSpec::of(std::move(props)));
}

// One player; x < y and y < z but not x < z. The root picks x (a) or a second
// node picking y (a) or z (b).
inline Game intransitive_game() {
  GameDescription d;
  d.nodes = {NodeId{}, NodeId{{"a"}}, NodeId{{"b"}}, NodeId{{"b", "a"}},
             NodeId{{"b", "b"}}};
  d.owner[NodeId{}] = "1";
  d.owner[NodeId{{"b"}}] = "1";
  d.payoff[NodeId{{"a"}}] = "x";
  d.payoff[NodeId{{"b", "a"}}] = "y";
  d.payoff[NodeId{{"b", "b"}}] = "z";
  d.preferences["1"] = PairList{{{"x", "y"}, {"y", "z"}}};
  return Game::from_description(d);
}

}  // namespace seqdyn::test
