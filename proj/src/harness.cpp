#include "seqdyn/harness.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <variant>

#include "seqdyn/dynamics.hpp"
#include "seqdyn/equilibria.hpp"
#include "seqdyn/error.hpp"
#include "seqdyn/fixtures.hpp"
#include "seqdyn/witness.hpp"

namespace seqdyn {

namespace {

using Rng = std::mt19937_64;

constexpr std::size_t kMaxAttempts = 10000;
constexpr std::uint64_t kTreeStream = 0x9e3779b97f4a7c15ULL;

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

std::string letter_label(std::size_t k) {
  if (k < 26) return std::string(1, static_cast<char>('a' + k));
  return "z" + std::to_string(k);
}

std::vector<OutcomeIndex> permutation(Rng& rng, std::size_t n) {
  std::vector<OutcomeIndex> v(n);
  std::iota(v.begin(), v.end(), OutcomeIndex{0});
  std::shuffle(v.begin(), v.end(), rng);
  return v;
}

std::vector<std::vector<OutcomeIndex>> ordered_partition(
    Rng& rng, const std::vector<OutcomeIndex>& items) {
  if (items.empty()) return {};
  std::vector<std::size_t> cls(items.size());
  for (auto& c : cls) c = uniform(rng, 0, items.size() - 1);
  std::set<std::size_t> used(cls.begin(), cls.end());
  std::map<std::size_t, std::size_t> rank;
  for (std::size_t c : used) rank.emplace(c, rank.size());
  std::vector<std::vector<OutcomeIndex>> out(used.size());
  for (std::size_t k = 0; k < items.size(); ++k) {
    out[rank.at(cls[k])].push_back(items[k]);
  }
  return out;
}

PreferenceRelation arbitrary_relation(Rng& rng, std::size_t n) {
  PreferenceRelation r(n);
  for (OutcomeIndex x = 0; x < n; ++x) {
    for (OutcomeIndex y = 0; y < n; ++y) {
      if (x != y && coin(rng, 1.0 / 3.0)) r.add(x, y);
    }
  }
  return r;
}

PreferenceRelation acyclic_relation(Rng& rng, std::size_t n) {
  const auto order = permutation(rng, n);
  PreferenceRelation r(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (coin(rng, 0.5)) r.add(order[a], order[b]);
    }
  }
  return r;
}

void add_back_pair(Rng& rng, PreferenceRelation& r) {
  const auto pairs = r.pairs();
  if (!pairs.empty()) {
    const auto [x, y] = pairs[uniform(rng, 0, pairs.size() - 1)];
    r.add(y, x);
    return;
  }
  const std::size_t n = r.size();
  if (n == 1) {
    r.add(0, 0);
    return;
  }
  const OutcomeIndex x = uniform(rng, 0, n - 1);
  OutcomeIndex y = uniform(rng, 0, n - 2);
  if (y >= x) ++y;
  r.add(x, y);
  r.add(y, x);
}

void fill_layered(Rng& rng, PreferenceProfile& p) {
  const std::size_t n = p.outcome_count();
  std::vector<OutcomeIndex> all(n);
  std::iota(all.begin(), all.end(), OutcomeIndex{0});
  const auto layers = ordered_partition(rng, all);
  std::vector<std::size_t> layer_of(n);
  for (std::size_t l = 0; l < layers.size(); ++l) {
    for (OutcomeIndex o : layers[l]) layer_of[o] = l;
  }
  // rank[player][outcome] inside the outcome's layer
  std::vector<std::vector<std::size_t>> rank(p.player_count(),
                                             std::vector<std::size_t>(n, 0));
  for (const auto& layer : layers) {
    const auto base = ordered_partition(rng, layer);
    for (PlayerIndex i = 0; i < p.player_count(); ++i) {
      const std::size_t team = uniform(rng, 0, 2);
      for (std::size_t c = 0; c < base.size(); ++c) {
        for (OutcomeIndex o : base[c]) {
          rank[i][o] = team == 0 ? c : team == 1 ? base.size() - 1 - c : 0;
        }
      }
    }
  }
  for (PlayerIndex i = 0; i < p.player_count(); ++i) {
    PreferenceRelation r(n);
    for (OutcomeIndex x = 0; x < n; ++x) {
      for (OutcomeIndex y = 0; y < n; ++y) {
        if (layer_of[x] < layer_of[y] ||
            (layer_of[x] == layer_of[y] && rank[i][x] < rank[i][y])) {
          r.add(x, y);
        }
      }
    }
    p.relations[i] = std::move(r);
  }
}

PreferenceProfile sample_preferences(Rng& rng, const GenParams& params) {
  const std::size_t k = uniform(rng, params.min_players, params.num_players);
  const std::size_t n = uniform(rng, params.min_outcomes, params.num_outcomes);
  std::vector<std::string> players, outcomes;
  for (std::size_t i = 0; i < k; ++i) players.push_back(std::to_string(i + 1));
  for (std::size_t o = 0; o < n; ++o) outcomes.push_back(letter_label(o));
  PreferenceProfile p = make_profile(outcomes, players);
  if (params.pref_kind == PrefKind::kLayeredSwo) {
    fill_layered(rng, p);
    return p;
  }
  for (auto& r : p.relations) {
    switch (params.pref_kind) {
      case PrefKind::kArbitrary:
        r = arbitrary_relation(rng, n);
        break;
      case PrefKind::kAcyclic:
        r = acyclic_relation(rng, n);
        break;
      case PrefKind::kSwo: {
        std::vector<OutcomeIndex> all(n);
        std::iota(all.begin(), all.end(), OutcomeIndex{0});
        r = PreferenceRelation::from_ranking(n, ordered_partition(rng, all));
        break;
      }
      case PrefKind::kSlo:
        r = linear_order_from_sequence(n, permutation(rng, n));
        break;
      case PrefKind::kCyclic:
        r = acyclic_relation(rng, n);
        add_back_pair(rng, r);
        break;
      case PrefKind::kLayeredSwo:
        break;
    }
  }
  return p;
}

struct TreeSampler {
  Rng& rng;
  const GenParams& params;
  const PreferenceProfile& prefs;
  GameDescription d;

  void grow(const NodeId& id) {
    d.nodes.push_back(id);
    const bool can_branch = id.depth() < params.max_depth &&
                            params.max_branching > 0 &&
                            prefs.player_count() > 0;
    if (!can_branch || !coin(rng, id.depth() == 0 ? 0.9 : 0.5)) {
      d.payoff[id] = prefs.outcomes[uniform(rng, 0, prefs.outcome_count() - 1)];
      return;
    }
    d.owner[id] = prefs.players[uniform(rng, 0, prefs.player_count() - 1)];
    const std::size_t b = (params.max_branching == 1 || coin(rng, 0.1))
                              ? 1
                              : uniform(rng, 2, params.max_branching);
    for (std::size_t a = 0; a < b; ++a) {
      NodeId child = id;
      child.path.push_back(letter_label(a));
      grow(child);
    }
  }
};

Game sample_tree(Rng& rng, const GenParams& params,
                 const PreferenceProfile& prefs) {
  if (prefs.outcome_count() == 0) {
    throw PreconditionError("cannot build a game without outcomes");
  }
  for (std::size_t attempt = 0; attempt < kMaxAttempts; ++attempt) {
    TreeSampler sampler{rng, params, prefs, {}};
    sampler.d.extra_players = prefs.players;
    sampler.d.extra_outcomes = prefs.outcomes;
    sampler.grow(NodeId{});
    if (params.max_nodes != 0 && sampler.d.nodes.size() > params.max_nodes) {
      continue;
    }
    Game g = Game::from_description(sampler.d);
    if (g.profile_count() > params.max_profiles) continue;
    return g.with_preferences(prefs);
  }
  throw PreconditionError("no tree within the bounds after " +
                          std::to_string(kMaxAttempts) + " attempts");
}

}  // namespace

std::string to_string(PrefKind k) {
  switch (k) {
    case PrefKind::kArbitrary: return "arbitrary";
    case PrefKind::kAcyclic: return "acyclic";
    case PrefKind::kSwo: return "swo";
    case PrefKind::kSlo: return "slo";
    case PrefKind::kLayeredSwo: return "layered-swo";
    case PrefKind::kCyclic: return "cyclic";
  }
  return "?";
}

std::optional<PrefKind> parse_pref_kind(const std::string& text) {
  for (PrefKind k : {PrefKind::kArbitrary, PrefKind::kAcyclic, PrefKind::kSwo,
                     PrefKind::kSlo, PrefKind::kLayeredSwo, PrefKind::kCyclic}) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

Json GenParams::to_json() const {
  return Json{{"seed", seed},
              {"max_depth", max_depth},
              {"max_branching", max_branching},
              {"num_players", num_players},
              {"num_outcomes", num_outcomes},
              {"min_players", min_players},
              {"min_outcomes", min_outcomes},
              {"pref_kind", to_string(pref_kind)},
              {"max_profiles", max_profiles},
              {"max_nodes", max_nodes}};
}

void validate(const GenParams& p) {
  if (p.min_players > p.num_players) {
    throw PreconditionError("min_players exceeds num_players");
  }
  if (p.min_outcomes == 0 || p.min_outcomes > p.num_outcomes) {
    throw PreconditionError("outcome bounds must satisfy 1 <= min <= num");
  }
  if (p.max_profiles == 0) throw PreconditionError("max_profiles must be > 0");
}

PreferenceProfile gen_preferences(const GenParams& p) {
  validate(p);
  Rng rng(p.seed);
  return sample_preferences(rng, p);
}

Game gen_game(const GenParams& p) {
  validate(p);
  Rng rng(p.seed);
  const PreferenceProfile prefs = sample_preferences(rng, p);
  return sample_tree(rng, p, prefs);
}

Game gen_game_over(const GenParams& p, const PreferenceProfile& prefs) {
  validate(p);
  Rng rng(p.seed ^ kTreeStream);
  return sample_tree(rng, p, prefs);
}

// ---------------------------------------------------------------------------
// Claim checks.

namespace {

using Instance = std::variant<Game, PreferenceProfile>;

struct Verdict {
  bool applies = true;
  std::string failure;

  static Verdict skip() { return {false, {}}; }
  static Verdict pass() { return {}; }
  static Verdict fail(std::string why) { return {true, std::move(why)}; }
};

using Props = std::set<Property>;

DynamicsGraph graph_of(const Game& g, const Props& props) {
  return build_graph(g, DynamicsSpec::of(props));
}

std::string props_name(const Props& props) {
  return "{" + to_string(DynamicsSpec::of(props)) + "}";
}

std::string set_name(const Game& g, const std::vector<StrategyProfile>& v) {
  std::string out = "{";
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k > 0) out += ", ";
    out += profile_name(g, v[k], g.single_char_actions() ? NameStyle::kCompact
                                                          : NameStyle::kLong);
  }
  return out + "}";
}

std::string name_of(const Game& g, const StrategyProfile& s) {
  return profile_name(g, s, g.single_char_actions() ? NameStyle::kCompact
                                                    : NameStyle::kLong);
}

std::string cycle_name(const Game& g, const DynamicsGraph& graph,
                       const std::vector<std::size_t>& cycle) {
  std::string out;
  for (std::size_t v : cycle) out += name_of(g, graph.vertices[v]) + " -> ";
  return out + name_of(g, graph.vertices[cycle.front()]);
}

template <typename Pred>
std::vector<StrategyProfile> profiles_where(const Game& g, Pred pred) {
  std::vector<StrategyProfile> out;
  for (const auto& s : enumerate_profiles(g)) {
    if (pred(s)) out.push_back(s);
  }
  return out;
}

std::vector<StrategyProfile> spe_profiles(const Game& g) {
  return profiles_where(g, [&](const auto& s) { return is_spe(g, s).holds; });
}
std::vector<StrategyProfile> ne_profiles(const Game& g) {
  return profiles_where(g, [&](const auto& s) { return is_nash(g, s).holds; });
}
std::vector<StrategyProfile> sne_profiles(const Game& g) {
  return profiles_where(g, [&](const auto& s) { return is_sne(g, s).holds; });
}

// First element of `a` missing from `b` (both in enumeration order).
std::optional<StrategyProfile> first_missing(
    const std::vector<StrategyProfile>& a,
    const std::vector<StrategyProfile>& b) {
  for (const auto& s : a) {
    if (!std::binary_search(b.begin(), b.end(), s, [](const auto& x,
                                                      const auto& y) {
          return x < y;
        })) {
      return s;
    }
  }
  return std::nullopt;
}

template <typename Pred>
bool all_relations(const PreferenceProfile& p, Pred pred) {
  return std::all_of(p.relations.begin(), p.relations.end(), pred);
}
bool all_acyclic(const PreferenceProfile& p) {
  return all_relations(p, [](const auto& r) { return is_acyclic(r); });
}
bool all_swo(const PreferenceProfile& p) {
  return all_relations(p,
                       [](const auto& r) { return is_strict_weak_order(r); });
}
bool all_slo(const PreferenceProfile& p) {
  return all_relations(p,
                       [](const auto& r) { return is_strict_linear_order(r); });
}

// One-node game whose leaves walk around a preference cycle of `player`.
Game cycle_fan_game(const PreferenceProfile& p, PlayerIndex player) {
  auto cycle = *find_preference_cycle(p.of(player));
  if (cycle.size() == 1) cycle.push_back(cycle.front());
  return fan_game(p, player, cycle);
}

Verdict check_thm1(const Game& g) {
  if (!all_acyclic(g.preferences())) return Verdict::skip();
  const auto si = graph_of(g, {Property::kSI});
  if (auto t = terminates(si); !t.terminates) {
    return Verdict::fail("{SI} cycle " + cycle_name(g, si, t.cycle));
  }
  const auto spe = spe_profiles(g);
  for (const Props& props :
       {Props{Property::kSI}, Props{Property::kSI, Property::kA},
        Props{Property::kSI, Property::k1P}}) {
    const auto term = terminal_profiles(graph_of(g, props));
    if (term != spe) {
      return Verdict::fail("terminals of " + props_name(props) + " = " +
                           set_name(g, term) + " but SPE = " +
                           set_name(g, spe));
    }
  }
  return Verdict::pass();
}

Verdict check_termination_iff_acyclic(const Game& g, const Props& props) {
  const auto& p = g.preferences();
  if (all_acyclic(p)) {
    const auto graph = graph_of(g, props);
    if (auto t = terminates(graph); !t.terminates) {
      return Verdict::fail("acyclic preferences but " + props_name(props) +
                           " cycle " + cycle_name(g, graph, t.cycle));
    }
    return Verdict::pass();
  }
  for (PlayerIndex i = 0; i < p.player_count(); ++i) {
    if (is_acyclic(p.of(i))) continue;
    const Game fan = cycle_fan_game(p, i);
    if (terminates(graph_of(fan, props)).terminates) {
      return Verdict::fail("preferences of player " + p.players[i] +
                           " are cyclic but " + props_name(props) +
                           " terminates in the fan game");
    }
  }
  return Verdict::pass();
}

Verdict check_prop2(const Game& g) {
  const auto term = terminal_profiles(graph_of(g, {Property::kSI}));
  if (auto s = first_missing(spe_profiles(g), term)) {
    return Verdict::fail("SPE " + name_of(g, *s) + " is not {SI}-terminal");
  }
  return Verdict::pass();
}

Verdict check_prop3(const Game& g) {
  const auto term =
      terminal_profiles(graph_of(g, {Property::kSI, Property::kA}));
  if (auto s = first_missing(term, spe_profiles(g))) {
    return Verdict::fail("{SI,A}-terminal " + name_of(g, *s) +
                         " is not an SPE");
  }
  return Verdict::pass();
}

Verdict check_lemma1(const Game& g) {
  const auto all = enumerate_profiles(g);
  for (const auto& s : all) {
    for (const auto& t : all) {
      if (s == t) continue;
      if (satisfies(Property::kA, g, s, t) &&
          !satisfies(Property::k1P, g, s, t)) {
        return Verdict::fail("(" + name_of(g, s) + ", " + name_of(g, t) +
                             ") satisfies A but not 1P");
      }
    }
  }
  return Verdict::pass();
}

Verdict check_lemma2(const Game& g) {
  const auto graph = graph_of(g, {Property::kSI});
  for (const auto& e : graph.edges) {
    const auto& s = graph.vertices[e.from];
    const auto& t = graph.vertices[e.to];
    const std::string pair = "(" + name_of(g, s) + ", " + name_of(g, t) + ")";
    const auto chain = decompose_si_step(g, s, t);
    if (chain.size() != e.diff.nodes.size() + 1 || chain.front() != s ||
        chain.back() != t) {
      return Verdict::fail("chain for " + pair + " has the wrong shape");
    }
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
      if (diff(g, chain[k], chain[k + 1]).nodes.size() != 1 ||
          !satisfies_all({Property::kSI, Property::kA}, g, chain[k],
                         chain[k + 1])) {
        return Verdict::fail("hop " + name_of(g, chain[k]) + " -> " +
                             name_of(g, chain[k + 1]) + " in the chain for " +
                             pair + " is not an {SI,A} update");
      }
    }
  }
  return Verdict::pass();
}

std::vector<std::pair<std::size_t, std::size_t>> edge_pairs(
    const DynamicsGraph& graph) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& e : graph.edges) out.emplace_back(e.from, e.to);
  return out;
}

Verdict check_prop_equiv(const Game& g) {
  const Props base{Property::kI, Property::kA};
  const auto reference = edge_pairs(graph_of(g, base));
  const Property extra[] = {Property::kSI, Property::kL, Property::k1P};
  for (unsigned mask = 1; mask < 8; ++mask) {
    Props props = base;
    for (unsigned b = 0; b < 3; ++b) {
      if (mask & (1u << b)) props.insert(extra[b]);
    }
    if (edge_pairs(graph_of(g, props)) != reference) {
      return Verdict::fail(props_name(props) + " differs from {I,A}");
    }
  }
  return Verdict::pass();
}

Verdict check_ne_ia(const Game& g) {
  const auto term = terminal_profiles(graph_of(g, {Property::kI, Property::kA}));
  if (auto s = first_missing(ne_profiles(g), term)) {
    return Verdict::fail("NE " + name_of(g, *s) + " is not {I,A}-terminal");
  }
  return Verdict::pass();
}

Verdict check_cyclic_players(const Game& g) {
  const auto& p = g.preferences();
  std::set<std::string> cyclic;
  std::set<PlayerIndex> cyclic_index;
  for (PlayerIndex i = 0; i < p.player_count(); ++i) {
    if (!is_acyclic(p.of(i))) {
      cyclic.insert(p.players[i]);
      cyclic_index.insert(i);
    }
  }
  const auto graph = build_graph(g, DynamicsSpec::mixed_with(cyclic));
  if (!terminates_for_acyclic(graph, cyclic_index)) {
    return Verdict::fail("a cycle of the mixed dynamics contains an update "
                         "by an acyclic player");
  }
  return Verdict::pass();
}

struct IlFacts {
  DynamicsGraph graph;
  TerminationResult termination;
  std::vector<StrategyProfile> sne;
};

IlFacts il_facts(const Game& g) {
  IlFacts f{graph_of(g, {Property::kI, Property::kL}), {}, sne_profiles(g)};
  f.termination = terminates(f.graph);
  return f;
}

// ¬out_of_pattern: the witness game has no SNE and a cyclic {I,L} graph.
std::string check_pattern_witness(const PreferenceProfile& p) {
  std::optional<Game> w;
  std::string which;
  if (auto m = find_main_pattern(p)) {
    w = main_pattern_game(p, *m);
    which = "main";
  } else if (auto s = find_secondary_pattern(p)) {
    w = secondary_pattern_game(p, *s);
    which = "secondary";
  } else {
    return {};
  }
  const auto f = il_facts(*w);
  if (!f.sne.empty()) {
    return "the " + which + " pattern game has SNE " + set_name(*w, f.sne);
  }
  if (f.termination.terminates) {
    return "the " + which + " pattern game has a terminating {I,L} graph";
  }
  return {};
}

Verdict check_thm_swo(const Game& g) {
  const auto& p = g.preferences();
  if (!all_swo(p)) return Verdict::skip();
  const auto layers = layer_partition(p);
  const bool oop = out_of_pattern(p);
  if (p.outcome_count() <= kOracleMaxOutcomes &&
      is_layerable_oracle(p) != layers.has_value()) {
    return Verdict::fail("layer_partition disagrees with the oracle");
  }
  const auto f = il_facts(g);
  if (layers && !f.termination.terminates) {
    return Verdict::fail("layered but {I,L} cycle " +
                         cycle_name(g, f.graph, f.termination.cycle));
  }
  if (layers && !oop) return Verdict::fail("layered but a pattern exists");
  if (f.termination.terminates && f.sne.empty()) {
    return Verdict::fail("{I,L} terminates but there is no SNE");
  }
  if (!oop) {
    if (auto why = check_pattern_witness(p); !why.empty()) {
      return Verdict::fail(why);
    }
  }
  return Verdict::pass();
}

Verdict check_cor_equiv(const Game& g) {
  const auto& p = g.preferences();
  if (!all_swo(p) || !(all_slo(p) || p.player_count() == 2)) {
    return Verdict::skip();
  }
  const bool layered = layer_partition(p).has_value();
  const bool oop = out_of_pattern(p);
  if (layered != oop) {
    return Verdict::fail(std::string("out_of_pattern = ") +
                         (oop ? "true" : "false") + " but layerable = " +
                         (layered ? "true" : "false"));
  }
  if (oop) {
    const auto f = il_facts(g);
    if (!f.termination.terminates) {
      return Verdict::fail("out of pattern but {I,L} cycle " +
                           cycle_name(g, f.graph, f.termination.cycle));
    }
    if (f.sne.empty()) return Verdict::fail("out of pattern but no SNE");
    return Verdict::pass();
  }
  if (auto why = check_pattern_witness(p); !why.empty()) {
    return Verdict::fail(why);
  }
  return Verdict::pass();
}

Verdict check_pattern_layer(const PreferenceProfile& p) {
  if (!all_slo(p)) return Verdict::skip();
  const bool main = out_of_main_pattern(p);
  if (main != out_of_pattern(p)) {
    return Verdict::fail("out_of_main_pattern differs from out_of_pattern");
  }
  if (main != layer_partition(p).has_value()) {
    return Verdict::fail("out_of_main_pattern differs from layer_partition");
  }
  if (p.outcome_count() <= kOracleMaxOutcomes &&
      main != is_layerable_oracle(p)) {
    return Verdict::fail("out_of_main_pattern differs from the oracle");
  }
  return Verdict::pass();
}

bool extends(const PreferenceRelation& base, const PreferenceRelation& ext) {
  for (const auto& [x, y] : base.pairs()) {
    if (!ext.prefers(x, y)) return false;
  }
  return true;
}

Verdict check_2p_extension(const PreferenceProfile& p) {
  if (p.player_count() != 2 || !all_swo(p)) return Verdict::skip();
  const bool oop = out_of_pattern(p);
  const bool layered = layer_partition(p).has_value();
  const auto ext = layerable_linear_extension(p);
  if (oop != layered || oop != ext.has_value()) {
    return Verdict::fail(std::string("out_of_pattern = ") +
                         (oop ? "true" : "false") + ", layerable = " +
                         (layered ? "true" : "false") + ", extension = " +
                         (ext ? "found" : "none"));
  }
  if (p.outcome_count() <= kOracleMaxOutcomes &&
      layered != is_layerable_oracle(p)) {
    return Verdict::fail("layer_partition disagrees with the oracle");
  }
  if (ext) {
    PreferenceProfile q = p;
    q.relations = {ext->first, ext->second};
    if (!is_strict_linear_order(ext->first) ||
        !is_strict_linear_order(ext->second) || !extends(p.of(0), ext->first) ||
        !extends(p.of(1), ext->second) || !layer_partition(q)) {
      return Verdict::fail("the returned extension is not a layerable "
                           "strict linear extension");
    }
  }
  return Verdict::pass();
}

// Every implication between properties other than A => 1P has a
// counterexample among the bundled games.
Verdict check_non_implications() {
  const std::vector<std::string> names = {"fig1", "fig4_right", "fig5_left",
                                          "fig5_right"};
  std::vector<Game> games;
  for (const auto& n : names) games.push_back(fixture_game(n));
  std::string missing;
  for (Property x : kAllProperties) {
    for (Property y : kAllProperties) {
      if (x == y || (x == Property::kA && y == Property::k1P)) continue;
      bool found = false;
      for (const Game& g : games) {
        const auto all = enumerate_profiles(g);
        for (const auto& s : all) {
          for (const auto& t : all) {
            if (s != t && satisfies(x, g, s, t) && !satisfies(y, g, s, t)) {
              found = true;
              break;
            }
          }
          if (found) break;
        }
        if (found) break;
      }
      if (!found) missing += " " + to_string(x) + "=>" + to_string(y);
    }
  }
  if (!missing.empty()) {
    return Verdict::fail("no counterexample for" + missing);
  }
  return Verdict::pass();
}

// ---------------------------------------------------------------------------
// Plans.

using Check = std::function<Verdict(const Instance&)>;

struct Variant {
  std::string name;
  std::function<Instance(const GenParams&)> make;
};

struct FixtureCheck {
  std::string fixture;
  Check extra;  // may be empty
};

struct Plan {
  Check check;
  std::vector<Variant> variants;
  std::vector<FixtureCheck> fixtures;
  bool profile_only = false;
  std::function<Verdict()> global;  // may be empty
};

Check on_game(std::function<Verdict(const Game&)> f) {
  return [f](const Instance& i) {
    if (const auto* g = std::get_if<Game>(&i)) return f(*g);
    return Verdict::skip();
  };
}

Check on_profile(std::function<Verdict(const PreferenceProfile&)> f) {
  return [f](const Instance& i) {
    if (const auto* p = std::get_if<PreferenceProfile>(&i)) return f(*p);
    return f(std::get<Game>(i).preferences());
  };
}

Variant games_as_given() {
  return {"", [](const GenParams& p) { return Instance{gen_game(p)}; }};
}

Variant games_of_kind(PrefKind kind) {
  return {to_string(kind), [kind](GenParams p) {
            p.pref_kind = kind;
            return Instance{gen_game(p)};
          }};
}

Variant profiles_as_given() {
  return {"", [](const GenParams& p) { return Instance{gen_preferences(p)}; }};
}

const std::vector<std::string>& game_fixtures() {
  static const std::vector<std::string> names = {
      "fig1",       "fig1_variant", "fig4_left", "fig4_right",
      "fig5_left",  "fig5_right",   "leaf"};
  return names;
}

std::vector<FixtureCheck> plain(const std::vector<std::string>& names) {
  std::vector<FixtureCheck> out;
  for (const auto& n : names) out.push_back({n, {}});
  return out;
}

Verdict expect(bool ok, const std::string& why) {
  return ok ? Verdict::pass() : Verdict::fail(why);
}

Plan plan_for(Claim c) {
  Plan plan;
  plan.variants = {games_as_given()};
  plan.fixtures = plain(game_fixtures());
  switch (c) {
    case Claim::kThm1:
      plan.check = on_game(check_thm1);
      break;
    case Claim::kProp1:
      plan.check = on_game([](const Game& g) {
        return check_termination_iff_acyclic(g, {Property::kSI});
      });
      plan.variants.push_back(games_of_kind(PrefKind::kCyclic));
      break;
    case Claim::kProp2:
      plan.check = on_game(check_prop2);
      break;
    case Claim::kProp3:
      plan.check = on_game(check_prop3);
      break;
    case Claim::kLemma1:
      plan.check = on_game(check_lemma1);
      plan.global = check_non_implications;
      break;
    case Claim::kLemma2:
      plan.check = on_game(check_lemma2);
      break;
    case Claim::kPropEquivIA:
      plan.check = on_game(check_prop_equiv);
      break;
    case Claim::kCorIATerminates:
      plan.check = on_game([](const Game& g) {
        return check_termination_iff_acyclic(g, {Property::kI, Property::kA});
      });
      plan.variants.push_back(games_of_kind(PrefKind::kCyclic));
      break;
    case Claim::kPropNEIATerminal:
      plan.check = on_game(check_ne_ia);
      plan.fixtures = plain(game_fixtures());
      plan.fixtures.push_back({"fig4_right", [](const Instance& i) {
        const Game& g = std::get<Game>(i);
        const auto term =
            terminal_profiles(graph_of(g, {Property::kI, Property::kA}));
        return expect(first_missing(term, ne_profiles(g)).has_value(),
                      "every {I,A}-terminal profile is an NE");
      }});
      break;
    case Claim::kPropCyclicPlayers:
      plan.check = on_game(check_cyclic_players);
      plan.variants = {
          {"", [](const GenParams& p) {
             Game g = gen_game(p);
             PreferenceProfile prefs = g.preferences();
             Rng rng(p.seed ^ kTreeStream);
             for (auto& r : prefs.relations) {
               if (coin(rng, 0.5)) add_back_pair(rng, r);
             }
             return Instance{g.with_preferences(prefs)};
           }}};
      plan.fixtures.push_back({"fig4_left", [](const Instance& i) {
        const Game& g = std::get<Game>(i);
        const auto graph = graph_of(g, {Property::kSI});
        return expect(!terminates_for_acyclic(graph, {1}),
                      "with the cyclic player under {SI} the acyclic player "
                      "still stops updating");
      }});
      break;
    case Claim::kThmSWO: {
      plan.check = on_game(check_thm_swo);
      plan.variants.push_back(games_of_kind(PrefKind::kLayeredSwo));
      plan.variants.push_back(
          {"three_player_layering", [](const GenParams& p) {
             const auto prefs = fixture_preferences("three_player_layering");
             return Instance{gen_game_over(p, prefs)};
           }});
      auto no_sne = [](const Instance& i) {
        const Game& g = std::get<Game>(i);
        return expect(sne_profiles(g).empty() &&
                          !out_of_pattern(g.preferences()),
                      "expected a pattern and no SNE");
      };
      plan.fixtures = {
          {"fig1", no_sne},
          {"fig5_left", no_sne},
          {"fig5_right",
           [](const Instance& i) {
             const Game& g = std::get<Game>(i);
             const auto f = il_facts(g);
             return expect(out_of_pattern(g.preferences()) && f.sne.empty() &&
                               terminal_vertices(f.graph).empty(),
                           "expected out of pattern, no SNE and no "
                           "{I,L}-terminal profile");
           }},
          {"fig1_variant", {}},
          {"three_player_layering",
           [](const Instance& i) {
             const auto& p = std::get<PreferenceProfile>(i);
             return expect(out_of_pattern(p) && !layer_partition(p) &&
                               !is_layerable_oracle(p),
                           "expected out of pattern and not layerable");
           }},
      };
      break;
    }
    case Claim::kCorEquiv:
      plan.check = on_game(check_cor_equiv);
      plan.variants.push_back({"2-player swo", [](GenParams p) {
                                 p.pref_kind = PrefKind::kSwo;
                                 p.min_players = p.num_players = 2;
                                 return Instance{gen_game(p)};
                               }});
      plan.fixtures = plain({"fig1", "fig1_variant", "fig5_left"});
      break;
    case Claim::kPropPatternLayer:
      plan.profile_only = true;
      plan.check = on_profile(check_pattern_layer);
      plan.variants = {profiles_as_given()};
      plan.fixtures = {{"table2", [](const Instance& i) {
                          const auto& p = std::get<PreferenceProfile>(i);
                          return expect(layer_partition(p).has_value(),
                                        "expected a layering");
                        }},
                       {"fig1", {}}};
      break;
    case Claim::kProp2pExtension:
      plan.profile_only = true;
      plan.check = on_profile(check_2p_extension);
      plan.variants = {profiles_as_given()};
      plan.fixtures = plain({"fig1", "fig1_variant", "fig5_left"});
      break;
  }
  return plan;
}

Json instance_json(const Instance& i) {
  if (const auto* g = std::get_if<Game>(&i)) return game_to_json(*g);
  return preference_profile_to_json(std::get<PreferenceProfile>(i));
}

Instance load_fixture(const std::string& name, bool profile_only) {
  const Json doc = Json::parse(fixture_document(name));
  if (profile_only || !doc.contains("tree")) {
    return fixture_preferences(name);
  }
  return fixture_game(name);
}

GenParams params_with(std::uint64_t seed, std::size_t depth,
                      std::size_t branching, std::size_t players,
                      std::size_t outcomes, PrefKind kind) {
  GenParams p;
  p.seed = seed;
  p.max_depth = depth;
  p.max_branching = branching;
  p.num_players = players;
  p.num_outcomes = outcomes;
  p.pref_kind = kind;
  return p;
}

std::vector<ClaimInfo> build_claims() {
  auto games = [](PrefKind kind) { return params_with(0, 4, 3, 3, 5, kind); };
  std::vector<ClaimInfo> out = {
      {Claim::kThm1, "thm1",
       "With acyclic preferences {SI} terminates and the terminal profiles of "
       "{SI}, {SI,A} and {SI,1P} are the SPEs",
       games(PrefKind::kAcyclic), 500},
      {Claim::kProp1, "prop1",
       "{SI} terminates in all games over the preferences iff they are acyclic",
       games(PrefKind::kAcyclic), 500},
      {Claim::kProp2, "prop2", "Every SPE is {SI}-terminal",
       games(PrefKind::kArbitrary), 500},
      {Claim::kProp3, "prop3", "Every {SI,A}-terminal profile is an SPE",
       games(PrefKind::kArbitrary), 500},
      {Claim::kLemma1, "lemma1",
       "A implies 1P, and no other implication between the properties holds",
       games(PrefKind::kArbitrary), 500},
      {Claim::kLemma2, "lemma2",
       "Every SI update splits into |H| single-node SI updates",
       games(PrefKind::kArbitrary), 200},
      {Claim::kPropEquivIA, "prop-equiv-ia",
       "All X-dynamics with {I,A} included in X are equal",
       games(PrefKind::kArbitrary), 500},
      {Claim::kCorIATerminates, "cor-ia-terminates",
       "{I,A} terminates in all games over the preferences iff they are "
       "acyclic",
       games(PrefKind::kAcyclic), 500},
      {Claim::kPropNEIATerminal, "prop-ne-ia-terminal",
       "Every NE is {I,A}-terminal", games(PrefKind::kArbitrary), 500},
      {Claim::kPropCyclicPlayers, "prop-cyclic-players",
       "The mixed dynamics terminates for acyclic players",
       games(PrefKind::kAcyclic), 500},
      {Claim::kThmSWO, "thm-swo",
       "For strict weak orders: layerable => {I,L} terminates => SNE exists "
       "=> out of pattern",
       games(PrefKind::kSwo), 500},
      {Claim::kCorEquiv, "cor-equiv",
       "For strict linear orders or two players with strict weak orders: "
       "layerable <=> {I,L} terminates <=> SNE exists <=> out of pattern",
       games(PrefKind::kSlo), 500},
      {Claim::kPropPatternLayer, "prop-pattern-layer",
       "Strict linear orders are out of the main pattern iff layerable",
       params_with(0, 0, 0, 4, 6, PrefKind::kSlo), 1000},
      {Claim::kProp2pExtension, "prop-2p-extension",
       "Two strict weak orders: out of pattern <=> a layerable strict linear "
       "extension exists <=> layerable",
       params_with(0, 0, 0, 2, 6, PrefKind::kSwo), 1000},
  };
  for (auto& c : out) {
    if (c.claim == Claim::kLemma2) c.defaults.max_nodes = 10;
    if (c.claim == Claim::kProp2pExtension) c.defaults.min_players = 2;
  }
  return out;
}

}  // namespace

const std::vector<ClaimInfo>& all_claims() {
  static const std::vector<ClaimInfo> claims = build_claims();
  return claims;
}

const ClaimInfo& claim_info(Claim c) {
  for (const auto& info : all_claims()) {
    if (info.claim == c) return info;
  }
  throw PreconditionError("unregistered claim");
}

Claim parse_claim(const std::string& id) {
  for (const auto& info : all_claims()) {
    if (info.id == id) return info.claim;
  }
  throw InputError("unknown claim id " + id);
}

Json ClaimReport::to_json() const {
  Json list = Json::array();
  for (const auto& f : failures) {
    Json entry = Json::object();
    if (f.seed) {
      entry["seed"] = *f.seed;
    } else {
      entry["fixture"] = f.fixture;
    }
    if (!f.variant.empty()) entry["variant"] = f.variant;
    entry["game"] = f.instance;
    entry["counterexample"] = f.counterexample;
    list.push_back(std::move(entry));
  }
  return Json{{"claim", claim},
              {"params", params.to_json()},
              {"trials", trials},
              {"instances", instances},
              {"checked", checked},
              {"passed", checked - failed},
              {"failed", failed},
              {"failures", std::move(list)}};
}

ClaimReport verify(Claim claim, const GenParams& p, std::size_t trials) {
  validate(p);
  const Plan plan = plan_for(claim);
  ClaimReport report;
  report.claim = claim_info(claim).id;
  report.params = p;
  report.trials = trials;

  auto record = [&](const Instance& inst, const Verdict& v, Failure where) {
    ++report.instances;
    if (!v.applies) return;
    ++report.checked;
    if (v.failure.empty()) return;
    ++report.failed;
    if (report.failures.size() < kMaxReportedFailures) {
      where.instance = instance_json(inst);
      where.counterexample = v.failure;
      report.failures.push_back(std::move(where));
    }
  };

  for (const auto& fx : plan.fixtures) {
    const Instance inst = load_fixture(fx.fixture, plan.profile_only);
    Verdict v = plan.check(inst);
    if (v.failure.empty() && fx.extra) {
      Verdict extra = fx.extra(inst);
      if (!extra.failure.empty() || !v.applies) v = extra;
    }
    record(inst, v, Failure{std::nullopt, fx.fixture, {}, {}, {}});
  }
  if (plan.global) {
    Verdict v = plan.global();
    ++report.instances;
    ++report.checked;
    if (!v.failure.empty()) {
      ++report.failed;
      report.failures.push_back(
          Failure{std::nullopt, "bundled games", {}, Json(), v.failure});
    }
  }
  for (std::size_t t = 0; t < trials; ++t) {
    GenParams q = p;
    q.seed = p.seed + t;
    for (const auto& variant : plan.variants) {
      const Instance inst = variant.make(q);
      record(inst, plan.check(inst), Failure{q.seed, {}, variant.name, {}, {}});
    }
  }
  return report;
}

}  // namespace seqdyn
