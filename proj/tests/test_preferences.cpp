#include <random>

#include "doctest.h"
#include "seqdyn/error.hpp"
#include "seqdyn/fixtures.hpp"
#include "seqdyn/harness.hpp"
#include "seqdyn/preferences.hpp"

using namespace seqdyn;

namespace {

PreferenceProfile two_player_profile(
    std::vector<std::string> outcomes,
    std::vector<std::vector<OutcomeIndex>> r1,
    std::vector<std::vector<OutcomeIndex>> r2) {
  PreferenceProfile p = make_profile(std::move(outcomes), {"1", "2"});
  p.relations[0] = PreferenceRelation::from_ranking(p.outcome_count(), r1);
  p.relations[1] = PreferenceRelation::from_ranking(p.outcome_count(), r2);
  return p;
}

PreferenceRelation random_relation(std::mt19937_64& rng, std::size_t n) {
  PreferenceRelation r(n);
  std::bernoulli_distribution coin(0.4);
  for (OutcomeIndex x = 0; x < n; ++x) {
    for (OutcomeIndex y = 0; y < n; ++y) {
      if (coin(rng)) r.add(x, y);
    }
  }
  return r;
}

}  // namespace

TEST_CASE("ranking builds the expected relation") {
  // y < x ~ z
  auto r = PreferenceRelation::from_ranking(3, {{1}, {0, 2}});
  CHECK(r.prefers(1, 0));
  CHECK(r.prefers(1, 2));
  CHECK_FALSE(r.prefers(0, 2));
  CHECK(r.indifferent(0, 2));
  CHECK_FALSE(r.indifferent(0, 0));
  CHECK(r.weakly_below(0, 2));
  CHECK(r.weakly_below(1, 0));
  CHECK_FALSE(r.weakly_below(0, 1));
  CHECK(r.pairs() == std::vector<std::pair<OutcomeIndex, OutcomeIndex>>{
                         {1, 0}, {1, 2}});
}

TEST_CASE("ranking rejects repeated or unknown outcomes") {
  CHECK_THROWS_AS(PreferenceRelation::from_ranking(3, {{0}, {0}}),
                  PreconditionError);
  CHECK_THROWS_AS(PreferenceRelation::from_ranking(3, {{5}}),
                  PreconditionError);
}

TEST_CASE("player ids sort numerically before other ids") {
  CHECK(player_id_less("2", "10"));
  CHECK_FALSE(player_id_less("10", "2"));
  CHECK(player_id_less("10", "a"));
  CHECK(player_id_less("alice", "bob"));
  auto p = make_profile({"z", "x", "x"}, {"10", "b", "2"});
  CHECK(p.outcomes == std::vector<std::string>{"x", "z"});
  CHECK(p.players == std::vector<std::string>{"2", "10", "b"});
  CHECK(p.find_player("b") == PlayerIndex{2});
  CHECK_FALSE(p.find_outcome("q").has_value());
}

TEST_CASE("classifiers on small relations") {
  PreferenceRelation empty(3);
  CHECK(is_acyclic(empty));
  CHECK(is_strict_weak_order(empty));
  CHECK_FALSE(is_strict_linear_order(empty));

  // x < y alone: x ~ z and z ~ y but not x ~ y.
  auto lone = PreferenceRelation::from_pairs(3, {{0, 1}});
  CHECK(is_acyclic(lone));
  CHECK_FALSE(is_strict_weak_order(lone));

  auto chain = PreferenceRelation::from_pairs(3, {{0, 1}, {1, 2}});
  CHECK(is_acyclic(chain));
  CHECK_FALSE(is_strict_weak_order(chain));

  auto linear = PreferenceRelation::from_ranking(3, {{2}, {0}, {1}});
  CHECK(is_strict_linear_order(linear));

  auto loop = PreferenceRelation::from_pairs(2, {{1, 1}});
  CHECK_FALSE(is_acyclic(loop));
  CHECK(find_preference_cycle(loop) == std::vector<OutcomeIndex>{1});

  auto cyc = PreferenceRelation::from_pairs(3, {{0, 1}, {1, 2}, {2, 1}});
  auto cycle = find_preference_cycle(cyc);
  REQUIRE(cycle.has_value());
  for (std::size_t k = 0; k < cycle->size(); ++k) {
    CHECK(cyc.prefers((*cycle)[k], (*cycle)[(k + 1) % cycle->size()]));
  }
}

TEST_CASE("slo implies swo implies acyclic on random relations") {
  std::mt19937_64 rng(7);
  int swo = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    const auto r = random_relation(rng, 1 + trial % 4);
    if (is_strict_linear_order(r)) CHECK(is_strict_weak_order(r));
    if (is_strict_weak_order(r)) {
      ++swo;
      CHECK(is_acyclic(r));
    }
    CHECK(is_acyclic(r) == !find_preference_cycle(r).has_value());
  }
  CHECK(swo > 0);
}

TEST_CASE("two-node example preferences contain the main pattern") {
  const auto p = fixture_preferences("fig1");
  const auto w = find_main_pattern(p);
  REQUIRE(w.has_value());
  // x < y < z for player 1 and y < z < x for player 2, with x, y, z the
  // outcomes y, x, z of the figure.
  CHECK(*w == MainPatternWitness{1, 0, 2, 0, 1});
  CHECK_FALSE(out_of_main_pattern(p));
  CHECK_FALSE(out_of_pattern(p));
  CHECK_FALSE(layer_partition(p).has_value());
  CHECK_FALSE(is_layerable_oracle(p));
}

TEST_CASE("the agreeing variant can be layered") {
  const auto p = fixture_preferences("fig1_variant");
  CHECK(out_of_pattern(p));
  const auto l = layer_partition(p);
  REQUIRE(l.has_value());
  CHECK(is_valid_layering(p, *l));
  CHECK(is_layerable_oracle(p));
}

TEST_CASE("four-outcome game has only the secondary pattern") {
  const auto p = fixture_preferences("fig5_left");
  CHECK(out_of_main_pattern(p));
  const auto w = find_secondary_pattern(p);
  REQUIRE(w.has_value());
  const auto o = [&](const char* s) { return *p.find_outcome(s); };
  CHECK(*w == SecondaryPatternWitness{o("w"), o("x"), o("y"), o("z"), 0, 1});
  CHECK_FALSE(out_of_secondary_pattern(p));
  CHECK_FALSE(layer_partition(p).has_value());
  CHECK_FALSE(is_layerable_oracle(p));
  CHECK_FALSE(layerable_linear_extension(p).has_value());
}

TEST_CASE("three-player chain is out of pattern") {
  const auto p = fixture_preferences("fig5_right");
  CHECK(out_of_pattern(p));
}

TEST_CASE("six outcomes split into three layers") {
  const auto p = fixture_preferences("table2");
  const auto o = [&](const char* s) { return *p.find_outcome(s); };
  const auto l = layer_partition(p);
  REQUIRE(l.has_value());
  CHECK(*l == LayerPartition{{{o("y"), o("z")}, {o("x")},
                              {o("u"), o("v"), o("w")}}});
  CHECK(is_valid_layering(p, *l));
  CHECK(is_layerable_oracle(p));
  CHECK(out_of_pattern(p));
}

TEST_CASE("three players out of pattern but not layerable") {
  const auto p = fixture_preferences("three_player_layering");
  CHECK(out_of_pattern(p));
  CHECK_FALSE(layer_partition(p).has_value());
  CHECK_FALSE(is_layerable_oracle(p));
}

TEST_CASE("layer_partition agrees with the oracle on a three-player profile") {
  // x < y < z; y < z ~ x; y ~ z < x
  PreferenceProfile p = make_profile({"x", "y", "z"}, {"1", "2", "3"});
  p.relations[0] = PreferenceRelation::from_ranking(3, {{0}, {1}, {2}});
  p.relations[1] = PreferenceRelation::from_ranking(3, {{1}, {0, 2}});
  p.relations[2] = PreferenceRelation::from_ranking(3, {{1, 2}, {0}});
  CHECK(layer_partition(p).has_value() == is_layerable_oracle(p));
}

TEST_CASE("is_valid_layering rejects bad partitions") {
  const auto p = fixture_preferences("table2");
  const auto o = [&](const char* s) { return *p.find_outcome(s); };
  // wrong order of layers
  CHECK_FALSE(is_valid_layering(
      p, {{{o("u"), o("v"), o("w")}, {o("x")}, {o("y"), o("z")}}}));
  // not a partition
  CHECK_FALSE(is_valid_layering(p, {{{o("y"), o("z")}, {o("x")}}}));
  // one layer holding an agree/disagree quadruple
  CHECK_FALSE(is_valid_layering(
      p, {{{o("u"), o("v"), o("w"), o("x"), o("y"), o("z")}}}));
}

TEST_CASE("layer_partition matches the oracle on random weak orders") {
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    GenParams gp;
    gp.seed = seed;
    gp.num_players = 3;
    gp.num_outcomes = 6;
    gp.pref_kind = seed % 2 ? PrefKind::kSwo : PrefKind::kLayeredSwo;
    const auto p = gen_preferences(gp);
    const auto l = layer_partition(p);
    CHECK(l.has_value() == is_layerable_oracle(p));
    if (l) CHECK(is_valid_layering(p, *l));
  }
}

TEST_CASE("layering preconditions") {
  PreferenceProfile p = make_profile({"x", "y", "z"}, {"1"});
  p.relations[0] = PreferenceRelation::from_pairs(3, {{0, 1}});
  CHECK_THROWS_AS(layer_partition(p), PreconditionError);

  std::vector<std::string> many;
  for (char c = 'a'; c < 'a' + 9; ++c) many.emplace_back(1, c);
  PreferenceProfile big = make_profile(many, {"1"});
  CHECK_THROWS_AS(is_layerable_oracle(big), CapExceeded);

  PreferenceProfile three = make_profile({"x"}, {"1", "2", "3"});
  CHECK_THROWS_AS(layerable_linear_extension(three), PreconditionError);
}

TEST_CASE("linear extensions") {
  CHECK(linear_extensions(PreferenceRelation(3)).size() == 6);
  const auto chain = PreferenceRelation::from_ranking(3, {{2}, {0}, {1}});
  CHECK(linear_extensions(chain) ==
        std::vector<std::vector<OutcomeIndex>>{{2, 0, 1}});
  const auto weak = PreferenceRelation::from_ranking(3, {{0, 1}, {2}});
  CHECK(linear_extensions(weak).size() == 2);
  CHECK_THROWS_AS(
      linear_extensions(PreferenceRelation::from_pairs(2, {{0, 1}, {1, 0}})),
      PreconditionError);
  const auto r = linear_order_from_sequence(3, {2, 0, 1});
  CHECK(r == chain);
}

TEST_CASE("two-player extension search") {
  // x ~1 y ~1 z with 2 ranking them: any layering works.
  auto p = two_player_profile({"x", "y", "z"}, {{0, 1, 2}}, {{0}, {1}, {2}});
  const auto ext = layerable_linear_extension(p);
  REQUIRE(ext.has_value());
  CHECK(is_strict_linear_order(ext->first));
  CHECK(is_strict_linear_order(ext->second));
  PreferenceProfile q = p;
  q.relations = {ext->first, ext->second};
  CHECK(layer_partition(q).has_value());
}

TEST_CASE("two-player equivalences on random weak orders") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    GenParams gp;
    gp.seed = seed;
    gp.min_players = gp.num_players = 2;
    gp.num_outcomes = 5;
    gp.pref_kind = PrefKind::kSwo;
    const auto p = gen_preferences(gp);
    const bool oop = out_of_pattern(p);
    CHECK(oop == layer_partition(p).has_value());
    CHECK(oop == layerable_linear_extension(p).has_value());
  }
}
