#include "seqdyn/dynamics.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "seqdyn/error.hpp"

namespace seqdyn {

std::string to_string(Property p) {
  switch (p) {
    case Property::kI: return "I";
    case Property::kSI: return "SI";
    case Property::kL: return "L";
    case Property::k1P: return "1P";
    case Property::kA: return "A";
  }
  return "?";
}

std::optional<Property> parse_property(const std::string& text) {
  std::string t;
  for (char c : text) t += static_cast<char>(std::toupper(c));
  for (Property p : kAllProperties) {
    if (to_string(p) == t) return p;
  }
  return std::nullopt;
}

DynamicsSpec DynamicsSpec::of(std::set<Property> props) {
  DynamicsSpec spec;
  spec.properties = std::move(props);
  return spec;
}

DynamicsSpec DynamicsSpec::mixed_with(std::set<std::string> cyclic) {
  DynamicsSpec spec;
  spec.cyclic_players = std::move(cyclic);
  return spec;
}

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

DynamicsSpec parse_dynamics(const std::string& text) {
  const std::string kMixed = "mixed:";
  if (text.rfind(kMixed, 0) == 0) {
    std::set<std::string> cyclic;
    const std::string rest = text.substr(kMixed.size());
    if (!rest.empty()) {
      for (const auto& id : split(rest, ',')) {
        if (id.empty()) throw InputError("empty player id in '" + text + "'");
        cyclic.insert(id);
      }
    }
    return DynamicsSpec::mixed_with(std::move(cyclic));
  }
  std::set<Property> props;
  for (const auto& tag : split(text, ',')) {
    auto p = parse_property(tag);
    if (!p) throw InputError("unknown dynamics property '" + tag + "'");
    props.insert(*p);
  }
  return DynamicsSpec::of(std::move(props));
}

std::string to_string(const DynamicsSpec& spec) {
  std::string out;
  if (spec.mixed()) {
    out = "mixed:";
    bool first = true;
    for (const auto& id : *spec.cyclic_players) {
      if (!first) out += ',';
      out += id;
      first = false;
    }
    return out;
  }
  for (Property p : kAllProperties) {
    if (!spec.properties.contains(p)) continue;
    if (!out.empty()) out += ',';
    out += to_string(p);
  }
  return out;
}

std::set<PlayerIndex> resolve_players(const Game& g,
                                      const std::set<std::string>& ids) {
  std::set<PlayerIndex> out;
  for (const auto& id : ids) {
    auto p = g.preferences().find_player(id);
    if (!p) throw PreconditionError("unknown player '" + id + "'");
    out.insert(*p);
  }
  return out;
}

void validate_dynamics(const Game& g, const DynamicsSpec& spec) {
  if (spec.mixed()) {
    if (!spec.properties.empty()) {
      throw PreconditionError("mixed dynamics take no property list");
    }
    resolve_players(g, *spec.cyclic_players);
    return;
  }
  if (spec.properties.empty()) {
    throw PreconditionError("dynamics needs at least one property");
  }
}

// ---------------------------------------------------------------------------
// Definitional predicates, written directly against the game operations.

bool satisfies(Property p, const Game& g, const StrategyProfile& s,
               const StrategyProfile& t) {
  const ProfileDiff d = diff(g, s, t);
  const auto& prefs = g.preferences();
  switch (p) {
    case Property::kI: {
      const OutcomeIndex before = outcome_of(g, s);
      const OutcomeIndex after = outcome_of(g, t);
      return std::all_of(d.players.begin(), d.players.end(),
                         [&](PlayerIndex i) {
                           return prefs.of(i).prefers(before, after);
                         });
    }
    case Property::kSI:
      return std::all_of(d.nodes.begin(), d.nodes.end(), [&](NodeIndex h) {
        const Game sub = subgame(g, h);
        return prefs.of(*g.node(h).owner)
            .prefers(outcome_of(sub, substrategy(g, s, h)),
                     outcome_of(sub, substrategy(g, t, h)));
      });
    case Property::kL:
      return std::all_of(d.nodes.begin(), d.nodes.end(),
                         [&](NodeIndex h) { return lies_along(g, t, h); });
    case Property::k1P:
      return d.players.size() <= 1;
    case Property::kA:
      return d.nodes.size() <= 1;
  }
  return false;
}

bool satisfies_all(const std::set<Property>& props, const Game& g,
                   const StrategyProfile& s, const StrategyProfile& t) {
  return std::all_of(props.begin(), props.end(),
                     [&](Property p) { return satisfies(p, g, s, t); });
}

bool mixed_edge(const Game& g, const std::set<PlayerIndex>& cyclic,
                const StrategyProfile& s, const StrategyProfile& t) {
  const ProfileDiff d = diff(g, s, t);
  if (d.empty()) return false;
  const bool none_cyclic =
      std::none_of(d.players.begin(), d.players.end(),
                   [&](PlayerIndex i) { return cyclic.contains(i); });
  const bool all_cyclic =
      std::all_of(d.players.begin(), d.players.end(),
                  [&](PlayerIndex i) { return cyclic.contains(i); });
  if (none_cyclic && satisfies(Property::kSI, g, s, t)) return true;
  return all_cyclic &&
         satisfies_all({Property::kI, Property::kL, Property::k1P}, g, s, t);
}

// ---------------------------------------------------------------------------
// Graph construction. Per-profile facts are computed once so that each pair
// costs one pass over the decision nodes.

namespace {

struct ProfileFacts {
  OutcomeIndex outcome;
  std::vector<OutcomeIndex> sub_outcome;  // by slot
  std::vector<bool> on_play;              // by slot
};

ProfileFacts facts_of(const Game& g, const StrategyProfile& s) {
  const std::size_t m = g.decision_count();
  ProfileFacts f{0, std::vector<OutcomeIndex>(m), std::vector<bool>(m, false)};
  // Canonical order lists parents before children, so a reverse sweep sees
  // every child's value first.
  std::vector<OutcomeIndex> value(g.nodes().size());
  for (NodeIndex h = g.nodes().size(); h-- > 0;) {
    const Node& n = g.node(h);
    if (n.terminal()) {
      value[h] = *n.outcome;
    } else {
      value[h] = value[n.moves[s.choice[n.slot]].child];
      f.sub_outcome[n.slot] = value[h];
    }
  }
  f.outcome = value[g.root()];
  for (NodeIndex h = g.root(); !g.node(h).terminal();
       h = successor(g, s, h)) {
    f.on_play[g.node(h).slot] = true;
  }
  return f;
}

struct PairEvaluator {
  const Game& g;
  const DynamicsSpec& spec;
  std::set<PlayerIndex> cyclic;
  std::vector<PlayerIndex> owner;  // by slot

  // Returns true and fills `d` when (s, t) is an edge.
  bool edge(const StrategyProfile& s, const ProfileFacts& fs,
            const StrategyProfile& t, const ProfileFacts& ft,
            ProfileDiff& d) const {
    const auto& prefs = g.preferences();
    const auto& props = spec.properties;
    const bool want_a = props.contains(Property::kA);
    const bool want_1p = props.contains(Property::k1P);
    const bool want_l = props.contains(Property::kL);
    const bool want_si = props.contains(Property::kSI);
    const bool want_i = props.contains(Property::kI);

    d.nodes.clear();
    d.players.clear();
    bool si = true;
    bool lazy = true;
    for (std::size_t slot = 0; slot < s.choice.size(); ++slot) {
      if (s.choice[slot] == t.choice[slot]) continue;
      if (want_a && !d.nodes.empty()) return false;
      d.nodes.push_back(g.decision_node(slot));
      const PlayerIndex p = owner[slot];
      if (std::find(d.players.begin(), d.players.end(), p) ==
          d.players.end()) {
        if (want_1p && !d.players.empty()) return false;
        d.players.push_back(p);
      }
      if (!ft.on_play[slot]) {
        lazy = false;
        if (want_l) return false;
      }
      if (!prefs.of(p).prefers(fs.sub_outcome[slot], ft.sub_outcome[slot])) {
        si = false;
        if (want_si) return false;
      }
    }
    if (d.nodes.empty()) return false;
    std::sort(d.players.begin(), d.players.end());

    auto improves = [&] {
      return std::all_of(d.players.begin(), d.players.end(),
                         [&](PlayerIndex p) {
                           return prefs.of(p).prefers(fs.outcome, ft.outcome);
                         });
    };
    if (!spec.mixed()) return !want_i || improves();

    const bool none_cyclic =
        std::none_of(d.players.begin(), d.players.end(),
                     [&](PlayerIndex p) { return cyclic.contains(p); });
    if (none_cyclic) return si;
    const bool all_cyclic =
        std::all_of(d.players.begin(), d.players.end(),
                    [&](PlayerIndex p) { return cyclic.contains(p); });
    return all_cyclic && d.players.size() == 1 && lazy && improves();
  }
};

}  // namespace

bool DynamicsGraph::has_edge(std::size_t from, std::size_t to) const {
  const auto& succ = successors[from];
  return std::binary_search(succ.begin(), succ.end(), to);
}

DynamicsGraph build_graph(const Game& g, const DynamicsSpec& spec,
                          std::uint64_t cap) {
  validate_dynamics(g, spec);
  DynamicsGraph graph;
  graph.vertices = enumerate_profiles(g, cap);
  const std::size_t n = graph.vertices.size();
  graph.successors.assign(n, {});

  std::vector<ProfileFacts> facts;
  facts.reserve(n);
  for (const auto& s : graph.vertices) facts.push_back(facts_of(g, s));

  PairEvaluator eval{g, spec, {}, {}};
  if (spec.mixed()) eval.cyclic = resolve_players(g, *spec.cyclic_players);
  for (std::size_t slot = 0; slot < g.decision_count(); ++slot) {
    eval.owner.push_back(*g.node(g.decision_node(slot)).owner);
  }

  ProfileDiff d;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      if (eval.edge(graph.vertices[a], facts[a], graph.vertices[b], facts[b],
                    d)) {
        graph.edges.push_back(DynamicsEdge{a, b, d});
        graph.successors[a].push_back(b);
      }
    }
  }
  return graph;
}

// ---------------------------------------------------------------------------

TerminationResult terminates(const DynamicsGraph& graph) {
  const std::size_t n = graph.vertex_count();
  enum : std::uint8_t { kWhite, kGrey, kBlack };
  std::vector<std::uint8_t> colour(n, kWhite);
  struct Frame {
    std::size_t vertex;
    std::size_t next;
  };
  std::vector<Frame> stack;
  for (std::size_t root = 0; root < n; ++root) {
    if (colour[root] != kWhite) continue;
    stack.push_back({root, 0});
    colour[root] = kGrey;
    while (!stack.empty()) {
      Frame& top = stack.back();
      const auto& succ = graph.successors[top.vertex];
      if (top.next == succ.size()) {
        colour[top.vertex] = kBlack;
        stack.pop_back();
        continue;
      }
      const std::size_t w = succ[top.next++];
      if (colour[w] == kGrey) {
        TerminationResult r{false, {}};
        auto it = std::find_if(stack.begin(), stack.end(),
                               [&](const Frame& f) { return f.vertex == w; });
        for (; it != stack.end(); ++it) r.cycle.push_back(it->vertex);
        return r;
      }
      if (colour[w] == kWhite) {
        colour[w] = kGrey;
        stack.push_back({w, 0});
      }
    }
  }
  return {};
}

std::vector<std::size_t> terminal_vertices(const DynamicsGraph& graph) {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
    if (graph.successors[v].empty()) out.push_back(v);
  }
  return out;
}

std::vector<StrategyProfile> terminal_profiles(const DynamicsGraph& graph) {
  std::vector<StrategyProfile> out;
  for (std::size_t v : terminal_vertices(graph)) {
    out.push_back(graph.vertices[v]);
  }
  return out;
}

std::vector<std::vector<std::size_t>> strongly_connected_components(
    const DynamicsGraph& graph) {
  const std::size_t n = graph.vertex_count();
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> components;
  std::size_t counter = 0;

  struct Frame {
    std::size_t vertex;
    std::size_t next;
  };
  std::vector<Frame> calls;
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    calls.push_back({root, 0});
    while (!calls.empty()) {
      Frame& f = calls.back();
      const std::size_t v = f.vertex;
      if (f.next == 0 && index[v] == kUnvisited) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      const auto& succ = graph.successors[v];
      if (f.next < succ.size()) {
        const std::size_t w = succ[f.next++];
        if (index[w] == kUnvisited) {
          calls.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        auto& comp = components.emplace_back();
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
      }
      calls.pop_back();
      if (!calls.empty()) {
        const std::size_t parent = calls.back().vertex;
        low[parent] = std::min(low[parent], low[v]);
      }
    }
  }
  return components;
}

bool terminates_for_acyclic(const DynamicsGraph& graph,
                            const std::set<PlayerIndex>& cyclic) {
  std::vector<std::size_t> component(graph.vertex_count(), 0);
  const auto sccs = strongly_connected_components(graph);
  for (std::size_t c = 0; c < sccs.size(); ++c) {
    for (std::size_t v : sccs[c]) component[v] = c;
  }
  for (const auto& e : graph.edges) {
    if (component[e.from] != component[e.to]) continue;
    for (PlayerIndex p : e.diff.players) {
      if (!cyclic.contains(p)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

namespace {

// The play of `s` from `from` reaches `target` (a descendant of `from`).
bool play_reaches(const Game& g, const StrategyProfile& s, NodeIndex from,
                  NodeIndex target) {
  NodeIndex v = from;
  while (v != target) {
    if (g.node(v).terminal() || !g.in_subtree(target, v)) return false;
    v = successor(g, s, v);
  }
  return true;
}

// h can be switched to t's action first: nothing below its new child changes
// any more, and no changed ancestor's play runs into h.
bool can_switch_first(const Game& g, const StrategyProfile& cur,
                      const StrategyProfile& t, const ProfileDiff& d,
                      NodeIndex h) {
  const NodeIndex child = successor(g, t, h);
  for (NodeIndex k : d.nodes) {
    if (k != h && g.in_subtree(k, child)) return false;
  }
  for (NodeIndex k : d.nodes) {
    if (k != h && g.in_subtree(h, k) && play_reaches(g, cur, k, h)) {
      return false;
    }
  }
  return true;
}

}  // namespace

std::vector<StrategyProfile> decompose_si_step(const Game& g,
                                               const StrategyProfile& s,
                                               const StrategyProfile& t) {
  validate_profile(g, s);
  validate_profile(g, t);
  if (s == t) throw PreconditionError("decomposition needs distinct profiles");
  if (!satisfies(Property::kSI, g, s, t)) {
    throw PreconditionError("decomposition needs an SI update");
  }

  std::vector<StrategyProfile> chain{s};
  StrategyProfile cur = s;
  while (cur != t) {
    const ProfileDiff d = diff(g, cur, t);
    std::optional<NodeIndex> pick;
    for (NodeIndex h : d.nodes) {
      if (!can_switch_first(g, cur, t, d, h)) continue;
      const auto& id = g.node(h).id;
      if (!pick || id.depth() > g.node(*pick).id.depth() ||
          (id.depth() == g.node(*pick).id.depth() &&
           id.path < g.node(*pick).id.path)) {
        pick = h;
      }
    }
    if (!pick) throw std::logic_error("no switchable node in SI update");
    const std::size_t slot = g.node(*pick).slot;
    cur.choice[slot] = t.choice[slot];
    chain.push_back(cur);
  }
  return chain;
}

// ---------------------------------------------------------------------------

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string to_dot(const Game& g, const DynamicsGraph& graph,
                   const DynamicsSpec& spec, NameStyle style) {
  std::set<PlayerIndex> cyclic;
  if (spec.mixed()) cyclic = resolve_players(g, *spec.cyclic_players);
  std::ostringstream out;
  out << "digraph dynamics {\n";
  out << "  label=" << quoted(to_string(spec)) << ";\n";
  for (const auto& v : graph.vertices) {
    out << "  " << quoted(profile_name(g, v, style)) << ";\n";
  }
  for (const auto& e : graph.edges) {
    std::string players;
    bool all_cyclic = true;
    for (PlayerIndex p : e.diff.players) {
      if (!players.empty()) players += ',';
      players += g.players()[p];
      all_cyclic = all_cyclic && cyclic.contains(p);
    }
    out << "  " << quoted(profile_name(g, graph.vertices[e.from], style))
        << " -> " << quoted(profile_name(g, graph.vertices[e.to], style))
        << " [players=" << quoted(players);
    if (spec.mixed() && all_cyclic) out << ", style=dotted";
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace seqdyn
