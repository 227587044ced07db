#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "seqdyn/game.hpp"

namespace seqdyn {

// Update properties of a profile pair (s, s').
//   I   every player who changes strictly improves the global outcome
//   SI  every changed node improves its owner's outcome in the subgame there
//   L   every changed node lies along the play of s'
//   1P  at most one player changes
//   A   at most one node changes
enum class Property { kI, kSI, kL, k1P, kA };

inline constexpr Property kAllProperties[] = {
    Property::kI, Property::kSI, Property::kL, Property::k1P, Property::kA};

std::string to_string(Property p);
std::optional<Property> parse_property(const std::string& text);

// Either an X-dynamics (intersection of the listed properties) or the mixed
// dynamics in which players outside `cyclic_players` update under SI and the
// cyclic ones under {I, L, 1P}.
struct DynamicsSpec {
  std::set<Property> properties;
  std::optional<std::set<std::string>> cyclic_players;

  bool mixed() const { return cyclic_players.has_value(); }

  static DynamicsSpec of(std::set<Property> props);
  static DynamicsSpec mixed_with(std::set<std::string> cyclic);

  friend bool operator==(const DynamicsSpec&, const DynamicsSpec&) = default;
};

// "I,L,1P" or "mixed:2,3" (an empty list after "mixed:" is allowed).
DynamicsSpec parse_dynamics(const std::string& text);
std::string to_string(const DynamicsSpec& spec);

// Throws PreconditionError if `spec` is empty, or names unknown players.
void validate_dynamics(const Game& g, const DynamicsSpec& spec);

// Definitional predicates. A pair of equal profiles satisfies every property.
bool satisfies(Property p, const Game& g, const StrategyProfile& s,
               const StrategyProfile& t);
bool satisfies_all(const std::set<Property>& props, const Game& g,
                   const StrategyProfile& s, const StrategyProfile& t);

// The mixed update rule; false for s == t.
bool mixed_edge(const Game& g, const std::set<PlayerIndex>& cyclic,
                const StrategyProfile& s, const StrategyProfile& t);

std::set<PlayerIndex> resolve_players(const Game& g,
                                      const std::set<std::string>& ids);

struct DynamicsEdge {
  std::size_t from;
  std::size_t to;
  ProfileDiff diff;

  friend bool operator==(const DynamicsEdge&, const DynamicsEdge&) = default;
};

// Vertices are all profiles in enumeration order; edges sorted by (from, to).
struct DynamicsGraph {
  std::vector<StrategyProfile> vertices;
  std::vector<DynamicsEdge> edges;
  std::vector<std::vector<std::size_t>> successors;

  std::size_t vertex_count() const { return vertices.size(); }
  bool has_edge(std::size_t from, std::size_t to) const;
};

DynamicsGraph build_graph(const Game& g, const DynamicsSpec& spec,
                          std::uint64_t cap = kDefaultProfileCap);

struct TerminationResult {
  bool terminates = true;
  std::vector<std::size_t> cycle;  // v0 -> v1 -> ... -> v0 when cyclic
};

TerminationResult terminates(const DynamicsGraph& graph);

std::vector<std::size_t> terminal_vertices(const DynamicsGraph& graph);
std::vector<StrategyProfile> terminal_profiles(const DynamicsGraph& graph);

// Tarjan components; each listed in ascending vertex order.
std::vector<std::vector<std::size_t>> strongly_connected_components(
    const DynamicsGraph& graph);

// False iff some cycle contains an edge changed by a player outside `cyclic`.
bool terminates_for_acyclic(const DynamicsGraph& graph,
                            const std::set<PlayerIndex>& cyclic);

// Splits an SI update s -> t into single-node SI updates: returns
// s = s0, s1, ..., sk = t with k = |H^{s,t}|. Throws PreconditionError unless
// s != t and (s, t) satisfies SI.
std::vector<StrategyProfile> decompose_si_step(const Game& g,
                                               const StrategyProfile& s,
                                               const StrategyProfile& t);

// Graphviz output with vertices and edges in enumeration order. Edges carry
// players="i,j"; under mixed dynamics, edges changed only by cyclic players
// are dotted.
std::string to_dot(const Game& g, const DynamicsGraph& graph,
                   const DynamicsSpec& spec,
                   NameStyle style = NameStyle::kCompact);

}  // namespace seqdyn
