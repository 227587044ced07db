#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "seqdyn/preferences.hpp"

namespace seqdyn {

using NodeIndex = std::size_t;

inline constexpr std::uint64_t kDefaultProfileCap = 1'000'000;

// A node is identified by the sequence of actions leading to it from the
// root; the root is the empty sequence.
struct NodeId {
  std::vector<std::string> path;

  std::size_t depth() const { return path.size(); }
  friend auto operator<=>(const NodeId&, const NodeId&) = default;
};

// Canonical node order: shorter paths first, then lexicographic.
bool node_order_less(const NodeId& a, const NodeId& b);

struct Move {
  std::string action;
  NodeIndex child;

  friend bool operator==(const Move&, const Move&) = default;
};

struct Node {
  NodeId id;
  std::optional<NodeIndex> parent;
  std::vector<Move> moves;  // sorted by action; empty iff terminal
  std::optional<PlayerIndex> owner;
  std::optional<OutcomeIndex> outcome;
  std::size_t slot = 0;  // rank among decision nodes; meaningless at leaves

  bool terminal() const { return moves.empty(); }
  friend bool operator==(const Node&, const Node&) = default;
};

// How a player's preference relation is written down.
struct PairList {
  std::vector<std::pair<std::string, std::string>> pairs;  // first ≺ second
};
struct Ranking {
  std::vector<std::vector<std::string>> classes;  // least preferred first
};
using RelationSpec = std::variant<PairList, Ranking>;

// Unvalidated game data: a history set with owner and payoff maps. Extra
// players and outcomes may be declared even if no node uses them.
struct GameDescription {
  std::vector<NodeId> nodes;
  std::map<NodeId, std::string> owner;
  std::map<NodeId, std::string> payoff;
  std::map<std::string, RelationSpec> preferences;
  std::vector<std::string> extra_players;
  std::vector<std::string> extra_outcomes;
};

// A finite sequential game with perfect information. Immutable once built.
class Game {
 public:
  // Validates every structural invariant; throws InputError on violation.
  static Game from_description(const GameDescription& d);

  const PreferenceProfile& preferences() const { return prefs_; }
  const std::vector<std::string>& players() const { return prefs_.players; }
  const std::vector<std::string>& outcomes() const { return prefs_.outcomes; }
  const std::vector<std::string>& actions() const { return actions_; }

  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(NodeIndex i) const { return nodes_[i]; }
  NodeIndex root() const { return 0; }

  // Decision nodes (H \ Z) in canonical order; position = slot.
  const std::vector<NodeIndex>& decision_nodes() const { return decision_; }
  std::size_t decision_count() const { return decision_.size(); }
  NodeIndex decision_node(std::size_t slot) const { return decision_[slot]; }

  std::optional<NodeIndex> find(const NodeId& id) const;
  NodeIndex at(const NodeId& id) const;  // throws PreconditionError

  // Slots of the decision nodes owned by `player`, in canonical order.
  const std::vector<std::size_t>& slots_of(PlayerIndex player) const {
    return owned_slots_[player];
  }

  // True when `ancestor` is a (non-strict) prefix of `node`.
  bool in_subtree(NodeIndex node, NodeIndex ancestor) const;

  // Number of strategy profiles, saturated at UINT64_MAX.
  std::uint64_t profile_count() const;

  // True when every action label is a single character.
  bool single_char_actions() const;

  // Same tree, different preferences. The profile must list the same players
  // and outcomes (PreconditionError otherwise).
  Game with_preferences(PreferenceProfile prefs) const;

  friend bool operator==(const Game&, const Game&) = default;

 private:
  friend Game subgame(const Game& g, NodeIndex h);

  PreferenceProfile prefs_;
  std::vector<std::string> actions_;
  std::vector<Node> nodes_;
  std::vector<NodeIndex> decision_;
  std::vector<std::vector<std::size_t>> owned_slots_;
  std::map<NodeId, NodeIndex> index_;

  void finish();
};

// A total choice of legal action at every decision node, indexed by slot.
// Each entry is an index into the node's sorted move list.
struct StrategyProfile {
  std::vector<std::uint32_t> choice;

  friend auto operator<=>(const StrategyProfile&,
                          const StrategyProfile&) = default;
};

// Nodes where two profiles disagree and the players owning them.
struct ProfileDiff {
  std::vector<NodeIndex> nodes;      // canonical order
  std::vector<PlayerIndex> players;  // ascending

  bool empty() const { return nodes.empty(); }
  friend bool operator==(const ProfileDiff&, const ProfileDiff&) = default;
};

enum class NameStyle { kCompact, kLong };

// One decision node owned by `player` whose k-th move ("0", "1", ...) leads
// to the outcome leaves[k]; outcomes may repeat.
Game fan_game(const PreferenceProfile& prefs, PlayerIndex player,
              const std::vector<OutcomeIndex>& leaves);

// Throws PreconditionError when `s` has the wrong arity or an illegal choice.
void validate_profile(const Game& g, const StrategyProfile& s);

// Profiles in mixed-radix order over the canonical node order, the first
// decision node being the most significant digit. Throws CapExceeded when the
// count exceeds `cap`.
std::vector<StrategyProfile> enumerate_profiles(
    const Game& g, std::uint64_t cap = kDefaultProfileCap);

// Position of `s` in enumerate_profiles order, and its inverse.
std::uint64_t profile_rank(const Game& g, const StrategyProfile& s);
StrategyProfile profile_at(const Game& g, std::uint64_t rank);

const std::string& action_at(const Game& g, const StrategyProfile& s,
                             NodeIndex h);
NodeIndex successor(const Game& g, const StrategyProfile& s, NodeIndex h);

// Outcome reached by playing `s` from the root, or from `h`.
OutcomeIndex outcome_of(const Game& g, const StrategyProfile& s);
OutcomeIndex outcome_from(const Game& g, const StrategyProfile& s,
                          NodeIndex h);

// G restricted to the subtree rooted at the decision node `h`.
Game subgame(const Game& g, NodeIndex h);
// The profile `s` restricted to subgame(g, h).
StrategyProfile substrategy(const Game& g, const StrategyProfile& s,
                            NodeIndex h);

// True when the play induced by `s` passes through `h`.
bool lies_along(const Game& g, const StrategyProfile& s, NodeIndex h);

ProfileDiff diff(const Game& g, const StrategyProfile& s,
                 const StrategyProfile& t);

// Compact: chosen actions concatenated in canonical node order ("rl").
// Long: "/=r,/r=l" (node path, '=' and action, comma separated). The only
// profile of a game without decision nodes is "ε" in both styles.
std::string profile_name(const Game& g, const StrategyProfile& s,
                         NameStyle style = NameStyle::kCompact);
// Accepts either form; throws InputError on anything else.
StrategyProfile parse_profile(const Game& g, const std::string& text);

// Compact: "ε" for the root, otherwise the concatenated path. Long: "/r/l".
std::string node_name(const Game& g, NodeIndex h,
                      NameStyle style = NameStyle::kCompact);
// Accepts "ε", "/" paths or (single-char actions only) concatenated paths.
NodeIndex parse_node(const Game& g, const std::string& text);

}  // namespace seqdyn
