#include "seqdyn/game.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "seqdyn/error.hpp"

namespace seqdyn {

bool node_order_less(const NodeId& a, const NodeId& b) {
  if (a.depth() != b.depth()) return a.depth() < b.depth();
  return a.path < b.path;
}

namespace {

std::string describe(const NodeId& id) {
  std::string out = "/";
  for (std::size_t k = 0; k < id.path.size(); ++k) {
    if (k > 0) out += '/';
    out += id.path[k];
  }
  return out;
}

NodeId parent_of(const NodeId& id) {
  return NodeId{{id.path.begin(), id.path.end() - 1}};
}

}  // namespace

Game Game::from_description(const GameDescription& d) {
  std::set<NodeId> history(d.nodes.begin(), d.nodes.end());
  if (!history.contains(NodeId{})) {
    throw InputError("the node set does not contain the root");
  }
  for (const NodeId& id : history) {
    for (const std::string& a : id.path) {
      if (a.empty()) throw InputError("empty action label at " + describe(id));
    }
    if (id.depth() > 0 && !history.contains(parent_of(id))) {
      throw InputError("node set is not prefix-closed: " + describe(id) +
                       " has no parent");
    }
  }

  std::vector<NodeId> ordered(history.begin(), history.end());
  std::sort(ordered.begin(), ordered.end(), node_order_less);

  Game g;
  std::set<std::string> actions;
  g.nodes_.resize(ordered.size());
  for (NodeIndex i = 0; i < ordered.size(); ++i) {
    g.nodes_[i].id = ordered[i];
    g.index_.emplace(ordered[i], i);
  }
  for (NodeIndex i = 1; i < ordered.size(); ++i) {
    const NodeIndex parent = g.index_.at(parent_of(ordered[i]));
    g.nodes_[i].parent = parent;
    g.nodes_[parent].moves.push_back(Move{ordered[i].path.back(), i});
    actions.insert(ordered[i].path.back());
  }

  for (const auto& [id, who] : d.owner) {
    auto it = g.index_.find(id);
    if (it == g.index_.end()) {
      throw InputError("owner given for unknown node " + describe(id));
    }
    if (g.nodes_[it->second].terminal()) {
      throw InputError("owner given for terminal node " + describe(id));
    }
  }
  for (const auto& [id, label] : d.payoff) {
    auto it = g.index_.find(id);
    if (it == g.index_.end()) {
      throw InputError("payoff given for unknown node " + describe(id));
    }
    if (!g.nodes_[it->second].terminal()) {
      throw InputError("payoff given for nonterminal node " + describe(id));
    }
  }

  std::vector<std::string> players = d.extra_players;
  std::vector<std::string> outcomes = d.extra_outcomes;
  for (const Node& n : g.nodes_) {
    if (n.terminal()) {
      auto it = d.payoff.find(n.id);
      if (it == d.payoff.end()) {
        throw InputError("terminal node " + describe(n.id) + " has no payoff");
      }
      if (it->second.empty()) {
        throw InputError("empty outcome label at " + describe(n.id));
      }
      outcomes.push_back(it->second);
    } else {
      auto it = d.owner.find(n.id);
      if (it == d.owner.end()) {
        throw InputError("decision node " + describe(n.id) + " has no owner");
      }
      if (it->second.empty()) {
        throw InputError("empty player id at " + describe(n.id));
      }
      players.push_back(it->second);
    }
  }
  for (const auto& [who, spec] : d.preferences) {
    if (who.empty()) throw InputError("empty player id in preferences");
    players.push_back(who);
  }

  g.prefs_ = make_profile(std::move(outcomes), std::move(players));
  g.actions_.assign(actions.begin(), actions.end());

  auto outcome_index = [&](const std::string& label) {
    auto o = g.prefs_.find_outcome(label);
    if (!o) throw InputError("preferences mention unknown outcome " + label);
    return *o;
  };
  for (const auto& [who, spec] : d.preferences) {
    const PlayerIndex p = *g.prefs_.find_player(who);
    const std::size_t n = g.prefs_.outcome_count();
    if (const auto* list = std::get_if<PairList>(&spec)) {
      std::vector<std::pair<OutcomeIndex, OutcomeIndex>> pairs;
      for (const auto& [a, b] : list->pairs) {
        pairs.emplace_back(outcome_index(a), outcome_index(b));
      }
      g.prefs_.relations[p] = PreferenceRelation::from_pairs(n, pairs);
    } else {
      std::vector<std::vector<OutcomeIndex>> ranking;
      std::set<std::string> seen;
      for (const auto& cls : std::get<Ranking>(spec).classes) {
        auto& out = ranking.emplace_back();
        for (const auto& label : cls) {
          if (!seen.insert(label).second) {
            throw InputError("outcome " + label +
                             " listed twice in the ranking of player " + who);
          }
          out.push_back(outcome_index(label));
        }
      }
      g.prefs_.relations[p] = PreferenceRelation::from_ranking(n, ranking);
    }
  }

  for (Node& n : g.nodes_) {
    if (n.terminal()) {
      n.outcome = *g.prefs_.find_outcome(d.payoff.at(n.id));
    } else {
      n.owner = *g.prefs_.find_player(d.owner.at(n.id));
    }
  }
  g.finish();
  return g;
}

void Game::finish() {
  decision_.clear();
  owned_slots_.assign(prefs_.player_count(), {});
  for (NodeIndex i = 0; i < nodes_.size(); ++i) {
    Node& n = nodes_[i];
    std::sort(n.moves.begin(), n.moves.end(),
              [](const Move& a, const Move& b) { return a.action < b.action; });
    if (n.terminal()) continue;
    n.slot = decision_.size();
    decision_.push_back(i);
    owned_slots_[*n.owner].push_back(n.slot);
  }
}

std::optional<NodeIndex> Game::find(const NodeId& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

NodeIndex Game::at(const NodeId& id) const {
  auto found = find(id);
  if (!found) throw PreconditionError("no node " + describe(id));
  return *found;
}

bool Game::in_subtree(NodeIndex node, NodeIndex ancestor) const {
  const auto& a = nodes_[ancestor].id.path;
  const auto& n = nodes_[node].id.path;
  return a.size() <= n.size() && std::equal(a.begin(), a.end(), n.begin());
}

std::uint64_t Game::profile_count() const {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t count = 1;
  for (NodeIndex h : decision_) {
    const std::uint64_t b = nodes_[h].moves.size();
    if (count > kMax / b) return kMax;
    count *= b;
  }
  return count;
}

bool Game::single_char_actions() const {
  return std::all_of(actions_.begin(), actions_.end(),
                     [](const std::string& a) { return a.size() == 1; });
}

Game Game::with_preferences(PreferenceProfile prefs) const {
  if (prefs.players != prefs_.players || prefs.outcomes != prefs_.outcomes) {
    throw PreconditionError(
        "replacement preferences must keep players and outcomes");
  }
  for (const auto& r : prefs.relations) {
    if (r.size() != prefs.outcome_count()) {
      throw PreconditionError("relation size does not match outcome count");
    }
  }
  Game g = *this;
  g.prefs_ = std::move(prefs);
  return g;
}

Game fan_game(const PreferenceProfile& prefs, PlayerIndex player,
             const std::vector<OutcomeIndex>& leaves) {
  if (player >= prefs.player_count() || leaves.empty()) {
    throw PreconditionError("fan game needs a known player and a leaf");
  }
  GameDescription d;
  d.nodes.push_back(NodeId{});
  d.owner[NodeId{}] = prefs.players[player];
  const std::size_t width = std::to_string(leaves.size() - 1).size();
  for (std::size_t k = 0; k < leaves.size(); ++k) {
    std::string action = std::to_string(k);
    action.insert(0, width - action.size(), '0');
    d.nodes.push_back(NodeId{{action}});
    d.payoff[NodeId{{action}}] = prefs.outcomes.at(leaves[k]);
  }
  d.extra_players = prefs.players;
  d.extra_outcomes = prefs.outcomes;
  return Game::from_description(d).with_preferences(prefs);
}

// ---------------------------------------------------------------------------

void validate_profile(const Game& g, const StrategyProfile& s) {
  if (s.choice.size() != g.decision_count()) {
    throw PreconditionError("profile has " + std::to_string(s.choice.size()) +
                            " entries, game has " +
                            std::to_string(g.decision_count()) +
                            " decision nodes");
  }
  for (std::size_t slot = 0; slot < s.choice.size(); ++slot) {
    if (s.choice[slot] >= g.node(g.decision_node(slot)).moves.size()) {
      throw PreconditionError("profile plays an illegal action");
    }
  }
}

std::vector<StrategyProfile> enumerate_profiles(const Game& g,
                                                std::uint64_t cap) {
  const std::uint64_t count = g.profile_count();
  if (count > cap) {
    throw CapExceeded("game has more than " + std::to_string(cap) +
                      " strategy profiles");
  }
  std::vector<StrategyProfile> out;
  out.reserve(count);
  StrategyProfile s{std::vector<std::uint32_t>(g.decision_count(), 0)};
  for (std::uint64_t k = 0; k < count; ++k) {
    out.push_back(s);
    for (std::size_t slot = s.choice.size(); slot-- > 0;) {
      const auto branching = g.node(g.decision_node(slot)).moves.size();
      if (++s.choice[slot] < branching) break;
      s.choice[slot] = 0;
    }
  }
  return out;
}

std::uint64_t profile_rank(const Game& g, const StrategyProfile& s) {
  std::uint64_t rank = 0;
  for (std::size_t slot = 0; slot < s.choice.size(); ++slot) {
    rank = rank * g.node(g.decision_node(slot)).moves.size() + s.choice[slot];
  }
  return rank;
}

StrategyProfile profile_at(const Game& g, std::uint64_t rank) {
  StrategyProfile s{std::vector<std::uint32_t>(g.decision_count(), 0)};
  for (std::size_t slot = s.choice.size(); slot-- > 0;) {
    const auto branching = g.node(g.decision_node(slot)).moves.size();
    s.choice[slot] = static_cast<std::uint32_t>(rank % branching);
    rank /= branching;
  }
  if (rank != 0) throw PreconditionError("profile rank out of range");
  return s;
}

const std::string& action_at(const Game& g, const StrategyProfile& s,
                             NodeIndex h) {
  const Node& n = g.node(h);
  return n.moves[s.choice[n.slot]].action;
}

NodeIndex successor(const Game& g, const StrategyProfile& s, NodeIndex h) {
  const Node& n = g.node(h);
  return n.moves[s.choice[n.slot]].child;
}

OutcomeIndex outcome_from(const Game& g, const StrategyProfile& s,
                          NodeIndex h) {
  while (!g.node(h).terminal()) h = successor(g, s, h);
  return *g.node(h).outcome;
}

OutcomeIndex outcome_of(const Game& g, const StrategyProfile& s) {
  return outcome_from(g, s, g.root());
}

Game subgame(const Game& g, NodeIndex h) {
  if (h >= g.nodes().size()) throw PreconditionError("no such node");
  if (g.node(h).terminal()) {
    throw PreconditionError("subgame root must be a decision node");
  }
  const std::size_t prefix = g.node(h).id.depth();
  Game sub;
  sub.prefs_ = g.prefs_;
  sub.actions_ = g.actions_;
  std::vector<NodeIndex> remap(g.nodes().size(), 0);
  for (NodeIndex i = 0; i < g.nodes().size(); ++i) {
    if (!g.in_subtree(i, h)) continue;
    remap[i] = sub.nodes_.size();
    Node n = g.node(i);
    n.id.path.erase(n.id.path.begin(),
                    n.id.path.begin() + static_cast<std::ptrdiff_t>(prefix));
    sub.index_.emplace(n.id, sub.nodes_.size());
    sub.nodes_.push_back(std::move(n));
  }
  for (Node& n : sub.nodes_) {
    if (n.parent) n.parent = n.id.depth() == 0 ? std::nullopt
                                               : std::optional(remap[*n.parent]);
    for (Move& m : n.moves) m.child = remap[m.child];
  }
  sub.finish();
  return sub;
}

StrategyProfile substrategy(const Game& g, const StrategyProfile& s,
                            NodeIndex h) {
  if (g.node(h).terminal()) {
    throw PreconditionError("substrategy root must be a decision node");
  }
  StrategyProfile out;
  for (std::size_t slot = 0; slot < g.decision_count(); ++slot) {
    if (g.in_subtree(g.decision_node(slot), h)) {
      out.choice.push_back(s.choice[slot]);
    }
  }
  return out;
}

bool lies_along(const Game& g, const StrategyProfile& s, NodeIndex h) {
  NodeIndex v = g.root();
  const auto& path = g.node(h).id.path;
  for (const std::string& a : path) {
    if (action_at(g, s, v) != a) return false;
    v = successor(g, s, v);
  }
  return true;
}

ProfileDiff diff(const Game& g, const StrategyProfile& s,
                 const StrategyProfile& t) {
  ProfileDiff d;
  std::vector<bool> seen(g.players().size(), false);
  for (std::size_t slot = 0; slot < g.decision_count(); ++slot) {
    if (s.choice[slot] == t.choice[slot]) continue;
    const NodeIndex h = g.decision_node(slot);
    d.nodes.push_back(h);
    seen[*g.node(h).owner] = true;
  }
  for (PlayerIndex p = 0; p < seen.size(); ++p) {
    if (seen[p]) d.players.push_back(p);
  }
  return d;
}

// ---------------------------------------------------------------------------

std::string node_name(const Game& g, NodeIndex h, NameStyle style) {
  const auto& path = g.node(h).id.path;
  if (style == NameStyle::kLong) return describe(g.node(h).id);
  if (path.empty()) return "ε";
  std::string out;
  for (const auto& a : path) out += a;
  return out;
}

NodeIndex parse_node(const Game& g, const std::string& text) {
  if (text == "ε" || text == "/" || text.empty()) return g.root();
  NodeId id;
  if (text.front() == '/') {
    std::size_t start = 1;
    while (start <= text.size()) {
      std::size_t end = text.find('/', start);
      if (end == std::string::npos) end = text.size();
      id.path.push_back(text.substr(start, end - start));
      start = end + 1;
    }
  } else if (g.single_char_actions()) {
    for (char c : text) id.path.emplace_back(1, c);
  } else {
    throw InputError("node '" + text + "' must be written as /a/b");
  }
  auto found = g.find(id);
  if (!found) throw InputError("no node '" + text + "' in the game");
  return *found;
}

std::string profile_name(const Game& g, const StrategyProfile& s,
                         NameStyle style) {
  if (g.decision_count() == 0) return "ε";
  std::string out;
  for (std::size_t slot = 0; slot < g.decision_count(); ++slot) {
    const NodeIndex h = g.decision_node(slot);
    if (style == NameStyle::kLong) {
      if (slot > 0) out += ',';
      out += node_name(g, h, NameStyle::kLong) + "=" + action_at(g, s, h);
    } else {
      out += action_at(g, s, h);
    }
  }
  return out;
}

namespace {

std::uint32_t move_index(const Game& g, NodeIndex h, const std::string& a) {
  const auto& moves = g.node(h).moves;
  for (std::uint32_t k = 0; k < moves.size(); ++k) {
    if (moves[k].action == a) return k;
  }
  throw InputError("action '" + a + "' is not legal at node " +
                   node_name(g, h, NameStyle::kLong));
}

}  // namespace

StrategyProfile parse_profile(const Game& g, const std::string& text) {
  StrategyProfile s{std::vector<std::uint32_t>(g.decision_count(), 0)};
  if (g.decision_count() == 0 && (text.empty() || text == "ε")) return s;
  if (text.find('=') == std::string::npos) {
    if (!g.single_char_actions() || text.size() != g.decision_count()) {
      throw InputError("profile '" + text +
                       "' must give one single-character action per "
                       "decision node, or use node=action pairs");
    }
    for (std::size_t slot = 0; slot < text.size(); ++slot) {
      s.choice[slot] =
          move_index(g, g.decision_node(slot), std::string(1, text[slot]));
    }
    return s;
  }
  std::vector<bool> given(g.decision_count(), false);
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string::npos) end = text.size();
    const std::string item = text.substr(start, end - start);
    const auto eq = item.rfind('=');
    if (eq == std::string::npos) {
      throw InputError("profile entry '" + item + "' is not node=action");
    }
    const NodeIndex h = parse_node(g, item.substr(0, eq));
    if (g.node(h).terminal()) {
      throw InputError("profile entry '" + item + "' names a terminal node");
    }
    const std::size_t slot = g.node(h).slot;
    if (given[slot]) throw InputError("node given twice in profile " + text);
    given[slot] = true;
    s.choice[slot] = move_index(g, h, item.substr(eq + 1));
    start = end + 1;
  }
  if (std::find(given.begin(), given.end(), false) != given.end()) {
    throw InputError("profile '" + text + "' does not cover every node");
  }
  return s;
}

}  // namespace seqdyn
