#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "seqdyn/dynamics.hpp"
#include "seqdyn/equilibria.hpp"
#include "seqdyn/fixtures.hpp"
#include "seqdyn/harness.hpp"

using namespace seqdyn;

namespace {

using Edges = std::set<std::pair<std::string, std::string>>;
using Clock = std::chrono::steady_clock;

constexpr double kFast = 1.0;
constexpr double kSuite = 300.0;

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (cond) return;
    if (ok) detail = what;
    ok = false;
  }
};

StrategyProfile P(const Game& g, const std::string& name) {
  return parse_profile(g, name);
}

DynamicsGraph graph_of(const Game& g, std::set<Property> props) {
  return build_graph(g, DynamicsSpec::of(std::move(props)));
}

Edges edges_of(const Game& g, const DynamicsGraph& graph) {
  Edges out;
  for (const auto& e : graph.edges) {
    out.emplace(profile_name(g, graph.vertices[e.from]),
                profile_name(g, graph.vertices[e.to]));
  }
  return out;
}

bool has(const Game& g, const DynamicsGraph& graph, const std::string& a,
         const std::string& b) {
  return graph.has_edge(profile_rank(g, P(g, a)), profile_rank(g, P(g, b)));
}

bool contains(const std::vector<StrategyProfile>& v, const StrategyProfile& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

std::vector<StrategyProfile> spe_set(const Game& g) {
  std::vector<StrategyProfile> out;
  for (const auto& s : enumerate_profiles(g)) {
    if (is_spe(g, s).holds) out.push_back(s);
  }
  return out;
}

std::string seed_note(std::uint64_t seed) {
  return "seed " + std::to_string(seed);
}

Outcome golden_graphs() {
  Outcome r;
  const Game g = fixture_game("fig1");
  const Edges lazy{{"lr", "rr"}, {"rr", "rl"}, {"rl", "ll"}};
  Edges sia = lazy;
  sia.emplace("lr", "ll");
  const Edges il{{"lr", "rr"}, {"rr", "rl"}, {"rl", "ll"}, {"ll", "rr"}};
  using enum Property;
  r.require(edges_of(g, graph_of(g, {kI, kL, k1P})) == lazy, "{I,L,1P} edges");
  r.require(edges_of(g, graph_of(g, {kSI, kA})) == sia, "{SI,A} edges");
  r.require(edges_of(g, graph_of(g, {kI, kL})) == il, "{I,L} edges");
  return r;
}

Outcome example_equilibria() {
  Outcome r;
  const Game g = fixture_game("fig1");
  const auto sets = equilibrium_sets(g);
  r.require(sets.ne == std::vector{P(g, "ll")}, "NE set");
  r.require(sets.spe == std::vector{P(g, "ll")}, "SPE set");
  r.require(sets.sne.empty(), "SNE set");
  const Game v = fixture_game("fig1_variant");
  const auto vs = equilibrium_sets(v);
  r.require(vs.spe == std::vector{P(v, "rr")}, "variant SPE set");
  r.require(contains(vs.ne, P(v, "rr")) && contains(vs.sne, P(v, "rr")),
            "variant rr in NE and SNE");
  return r;
}

Outcome secondary_pattern_game() {
  Outcome r;
  const Game g = fixture_game("fig5_left");
  using enum Property;
  const auto il = graph_of(g, {kI, kL});
  r.require(il.vertex_count() == 8, "profile count");
  r.require(has(g, il, "rrr", "rrl") && has(g, il, "rrl", "rll") &&
                has(g, il, "rll", "lll") && has(g, il, "lll", "rrr"),
            "cycle rrr->rrl->rll->lll->rrr");
  r.require(terminal_vertices(il).empty(), "terminal profiles");
  r.require(equilibrium_sets(g).sne.empty(), "SNE set");
  const auto& p = g.preferences();
  r.require(!out_of_secondary_pattern(p), "out_of_secondary_pattern");
  const auto w = find_secondary_pattern(p);
  const auto o = [&](const char* s) { return *p.find_outcome(s); };
  r.require(w && w->w == o("w") && w->x == o("x") && w->y == o("y") &&
                w->z == o("z"),
            "witness (w,x,y,z)");
  return r;
}

Outcome out_of_pattern_without_sne() {
  Outcome r;
  const Game g = fixture_game("fig5_right");
  using enum Property;
  r.require(terminal_vertices(graph_of(g, {kI, kL})).empty(),
            "terminal profiles");
  r.require(equilibrium_sets(g).sne.empty(), "SNE set");
  r.require(out_of_pattern(g.preferences()), "out_of_pattern");
  return r;
}

Outcome cyclic_player_under_si() {
  Outcome r;
  const Game g = fixture_game("fig4_left");
  using enum Property;
  const auto si = graph_of(g, {kSI});
  for (auto [a, b] : std::vector<std::pair<const char*, const char*>>{
           {"lr", "rr"}, {"rl", "ll"}, {"rr", "rl"}, {"rl", "rr"},
           {"ll", "lr"}, {"lr", "ll"}}) {
    r.require(has(g, si, a, b), std::string("edge ") + a + "->" + b);
  }
  r.require(!terminates_for_acyclic(si, {1}), "terminates_for_acyclic");
  return r;
}

Outcome terminal_but_not_nash() {
  Outcome r;
  const Game g = fixture_game("fig4_right");
  using enum Property;
  r.require(contains(terminal_profiles(graph_of(g, {kI, kA})), P(g, "ll")),
            "ll terminal");
  r.require(!is_nash(g, P(g, "ll")).holds, "is_nash(ll)");
  return r;
}

Outcome six_outcome_layering() {
  Outcome r;
  const auto p = fixture_preferences("table2");
  const auto o = [&](const char* s) { return *p.find_outcome(s); };
  const LayerPartition expected{
      {{o("y"), o("z")}, {o("x")}, {o("u"), o("v"), o("w")}}};
  const auto l = layer_partition(p);
  r.require(l && *l == expected, "layer_partition");
  r.require(is_layerable_oracle(p), "oracle");
  return r;
}

Outcome spe_characterization(PrefKind kind, std::size_t* failures) {
  Outcome r;
  GenParams gp;
  gp.pref_kind = kind;
  using enum Property;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    gp.seed = seed;
    const Game g = gen_game(gp);
    const auto spe = spe_set(g);
    const auto si = graph_of(g, {kSI});
    const bool ok = terminates(si).terminates &&
                    terminal_profiles(si) == spe &&
                    terminal_profiles(graph_of(g, {kSI, kA})) == spe &&
                    terminal_profiles(graph_of(g, {kSI, k1P})) == spe;
    if (!ok) ++*failures;
    r.require(ok, seed_note(seed));
  }
  return r;
}

Outcome prop_equiv() {
  Outcome r;
  GenParams gp = claim_info(Claim::kPropEquivIA).defaults;
  using enum Property;
  const std::vector<Property> extra{kSI, kL, k1P};
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    gp.seed = seed;
    const Game g = gen_game(gp);
    const auto base = graph_of(g, {kI, kA}).edges;
    for (unsigned mask = 1; mask < 8; ++mask) {
      std::set<Property> props{kI, kA};
      for (unsigned b = 0; b < 3; ++b) {
        if (mask & (1u << b)) props.insert(extra[b]);
      }
      r.require(graph_of(g, props).edges == base, seed_note(seed));
    }
  }
  return r;
}

Outcome si_decomposition() {
  Outcome r;
  GenParams gp = claim_info(Claim::kLemma2).defaults;
  using enum Property;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    gp.seed = seed;
    const Game g = gen_game(gp);
    r.require(g.nodes().size() <= 10, seed_note(seed) + " size");
    const auto si = graph_of(g, {kSI});
    for (const auto& e : si.edges) {
      const auto& s = si.vertices[e.from];
      const auto& t = si.vertices[e.to];
      const auto chain = decompose_si_step(g, s, t);
      bool ok = chain.size() == e.diff.nodes.size() + 1 &&
                chain.front() == s && chain.back() == t;
      for (std::size_t k = 0; ok && k + 1 < chain.size(); ++k) {
        ok = chain[k] != chain[k + 1] &&
             satisfies_all({kSI, kA}, g, chain[k], chain[k + 1]);
      }
      r.require(ok, seed_note(seed));
    }
  }
  return r;
}

Outcome order_equivalences() {
  Outcome r;
  GenParams slo = claim_info(Claim::kPropPatternLayer).defaults;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    slo.seed = seed;
    const auto p = gen_preferences(slo);
    r.require(p.outcome_count() <= 6, seed_note(seed) + " size");
    r.require(out_of_main_pattern(p) == is_layerable_oracle(p),
              "SLO " + seed_note(seed));
  }
  GenParams two = claim_info(Claim::kProp2pExtension).defaults;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    two.seed = seed;
    const auto p = gen_preferences(two);
    r.require(p.player_count() == 2 && p.outcome_count() <= 6,
              seed_note(seed) + " size");
    const bool out = out_of_pattern(p);
    r.require(out == layer_partition(p).has_value() &&
                  out == layerable_linear_extension(p).has_value(),
              "2-player " + seed_note(seed));
  }
  const auto three = fixture_preferences("three_player_layering");
  r.require(out_of_pattern(three), "three players out_of_pattern");
  r.require(!is_layerable_oracle(three) && !layer_partition(three),
            "three players layerable");
  return r;
}

Outcome terminal_characterizations() {
  Outcome r;
  GenParams gp;
  gp.pref_kind = PrefKind::kAcyclic;
  using enum Property;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    gp.seed = seed;
    const Game g = gen_game(gp);
    const auto sets = equilibrium_sets(g);
    r.require(terminal_profiles(graph_of(g, {kI, kL, k1P})) == sets.ne,
              seed_note(seed) + " NE");
    r.require(terminal_profiles(graph_of(g, {kI, kL})) == sets.sne,
              seed_note(seed) + " SNE");
    const auto ia = terminal_profiles(graph_of(g, {kI, kA}));
    r.require(std::all_of(sets.ne.begin(), sets.ne.end(),
                          [&](const auto& s) { return contains(ia, s); }),
              seed_note(seed) + " NE in {I,A} terminals");
  }
  return r;
}

struct Criterion {
  int number;
  std::string name;
  double limit;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  std::size_t thm_failures = 0;
  std::size_t swo_failures = 0;
  const std::vector<Criterion> criteria{
      {1, "golden dynamics graphs", kFast, golden_graphs},
      {2, "equilibria of the two-player example", kFast, example_equilibria},
      {3, "secondary pattern game", kFast, secondary_pattern_game},
      {4, "out of pattern without SNE", kFast, out_of_pattern_without_sne},
      {5, "cyclic player under SI", kFast, cyclic_player_under_si},
      {6, "{I,A} terminal that is not NE", kFast, terminal_but_not_nash},
      {7, "six-outcome layering", kFast, six_outcome_layering},
      {8, "SI terminals equal SPE (acyclic)", kSuite,
       [&] { return spe_characterization(PrefKind::kAcyclic, &thm_failures); }},
      {9, "{I,A} supersets agree", kSuite, prop_equiv},
      {10, "SI steps decompose", kSuite, si_decomposition},
      {11, "order-theory equivalences", kSuite, order_equivalences},
      {12, "terminal-set characterizations", kSuite,
       terminal_characterizations},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(Clock::now() - start).count();
    if (secs > c.limit) o.require(false, "time limit");
    failed += !o.ok;
    std::printf("criterion %2d %s  %-40s %8.3f s (limit %.0f s)%s%s\n",
                c.number, o.ok ? "PASS" : "FAIL", c.name.c_str(), secs,
                c.limit, o.ok ? "" : "  first failure: ", o.detail.c_str());
    if (c.number == 8) {
      std::printf("             %zu of 500 games failed\n", thm_failures);
      (void)spe_characterization(PrefKind::kSwo, &swo_failures);
      std::printf("             same suite with weak-order preferences: "
                  "%zu of 500 games failed\n",
                  swo_failures);
    }
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
