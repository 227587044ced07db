#include <fstream>
#include <sstream>

#include "doctest.h"
#include "seqdyn/error.hpp"
#include "seqdyn/fixtures.hpp"
#include "seqdyn/json_io.hpp"
#include "support.hpp"

using namespace seqdyn;
using seqdyn::test::P;

TEST_CASE("two-node example structure") {
  const Game g = fixture_game("fig1");
  CHECK(g.players() == std::vector<std::string>{"1", "2"});
  CHECK(g.outcomes() == std::vector<std::string>{"x", "y", "z"});
  CHECK(g.nodes().size() == 5);
  CHECK(g.decision_count() == 2);
  CHECK(g.profile_count() == 4);
  CHECK(node_name(g, g.decision_node(0)) == "ε");
  CHECK(node_name(g, g.decision_node(1)) == "r");
  CHECK(node_name(g, g.decision_node(1), NameStyle::kLong) == "/r");
  CHECK(g.slots_of(0) == std::vector<std::size_t>{0});
  CHECK(g.slots_of(1) == std::vector<std::size_t>{1});
}

TEST_CASE("profiles enumerate with the root as the leading digit") {
  const Game g = fixture_game("fig1");
  const auto all = enumerate_profiles(g);
  CHECK(test::names(g, all) ==
        std::vector<std::string>{"ll", "lr", "rl", "rr"});
  for (std::uint64_t k = 0; k < all.size(); ++k) {
    CHECK(profile_rank(g, all[k]) == k);
    CHECK(profile_at(g, k) == all[k]);
  }
  CHECK_THROWS_AS(enumerate_profiles(g, 3), CapExceeded);
}

TEST_CASE("plays and outcomes") {
  const Game g = fixture_game("fig1");
  const auto o = [&](const char* s) { return *g.preferences().find_outcome(s); };
  CHECK(outcome_of(g, P(g, "ll")) == o("x"));
  CHECK(outcome_of(g, P(g, "lr")) == o("x"));
  CHECK(outcome_of(g, P(g, "rl")) == o("y"));
  CHECK(outcome_of(g, P(g, "rr")) == o("z"));
  const NodeIndex r = parse_node(g, "r");
  CHECK(outcome_from(g, P(g, "ll"), r) == o("y"));
  CHECK(lies_along(g, P(g, "rl"), r));
  CHECK_FALSE(lies_along(g, P(g, "lr"), r));
  CHECK(action_at(g, P(g, "lr"), r) == "r");
  CHECK(successor(g, P(g, "rl"), g.root()) == r);
}

TEST_CASE("subgames keep preferences and restrict profiles") {
  const Game g = fixture_game("fig1");
  const NodeIndex r = parse_node(g, "r");
  const Game sub = subgame(g, r);
  CHECK(sub.decision_count() == 1);
  CHECK(sub.preferences() == g.preferences());
  CHECK(profile_name(sub, substrategy(g, P(g, "lr"), r)) == "r");
  CHECK(outcome_of(sub, substrategy(g, P(g, "ll"), r)) ==
        outcome_from(g, P(g, "ll"), r));
}

TEST_CASE("diff lists changed nodes and players") {
  const Game g = fixture_game("fig1");
  const auto d = diff(g, P(g, "ll"), P(g, "rr"));
  CHECK(d.nodes.size() == 2);
  CHECK(d.players == std::vector<PlayerIndex>{0, 1});
  CHECK(diff(g, P(g, "ll"), P(g, "ll")).empty());
}

TEST_CASE("profile names round trip in both styles") {
  const Game g = fixture_game("fig5_left");
  for (const auto& s : enumerate_profiles(g)) {
    CHECK(parse_profile(g, profile_name(g, s)) == s);
    CHECK(parse_profile(g, profile_name(g, s, NameStyle::kLong)) == s);
  }
  CHECK(profile_name(g, P(g, "rlr"), NameStyle::kLong) == "/=r,/r=l,/r/r=r");
  CHECK_THROWS_AS(parse_profile(g, "rl"), InputError);
  CHECK_THROWS_AS(parse_profile(g, "rlq"), InputError);
  CHECK_THROWS_AS(parse_profile(g, "/=r,/r=l"), InputError);
  CHECK_THROWS_AS(parse_profile(g, "/=r,/=l,/r/r=r"), InputError);
}

TEST_CASE("a single leaf has one empty profile") {
  const Game g = fixture_game("leaf");
  CHECK(g.decision_count() == 0);
  const auto all = enumerate_profiles(g);
  REQUIRE(all.size() == 1);
  CHECK(profile_name(g, all[0]) == "ε");
  CHECK(parse_profile(g, "ε") == all[0]);
}

TEST_CASE("multi-character actions need long names") {
  const Game g = load_game(R"({
    "tree": {"player": "1", "moves": {
      "left": {"outcome": "x"},
      "right": {"outcome": "y"}}},
    "preferences": {"1": {"ranking": [["x"], ["y"]]}}})");
  CHECK_FALSE(g.single_char_actions());
  const auto all = enumerate_profiles(g);
  CHECK(profile_name(g, all[1], NameStyle::kLong) == "/=right");
  CHECK(parse_profile(g, "/=right") == all[1]);
  CHECK_THROWS_AS(parse_profile(g, "r"), InputError);
}

TEST_CASE("invalid game documents are rejected") {
  const char* bad[] = {
      "not json",
      "[]",
      R"({"preferences": {}})",
      R"({"tree": {"player": "1", "moves": {}}})",
      R"({"tree": {"player": "1"}})",
      R"({"tree": {"outcome": "x", "player": "1", "moves": {"a": {"outcome": "y"}}}})",
      R"({"tree": {"outcome": ""}})",
      R"({"tree": {"player": "", "moves": {"a": {"outcome": "x"}}}})",
      R"({"tree": {"player": "1", "moves": {"": {"outcome": "x"}}}})",
      R"({"tree": {"outcome": "x"}, "preferences": {"1": {"pairs": [["x", "q"]]}}})",
      R"({"tree": {"outcome": "x"}, "preferences": {"1": {"ranking": [["x"], ["x"]]}}})",
      R"({"tree": {"outcome": "x"}, "preferences": {"1": {"pairs": [["x"]]}}})",
      R"({"tree": {"outcome": "x"}, "preferences": {"1": {}}})",
      R"({"tree": {"outcome": "x"}, "preferences": {"1": {"pairs": [], "ranking": []}}})",
  };
  for (const char* doc : bad) {
    CAPTURE(doc);
    CHECK_THROWS_AS(load_game(doc), InputError);
  }
  CHECK_THROWS_AS(load_game_file("/nonexistent/game.json"), InputError);
}

TEST_CASE("descriptions must be prefix closed with owners and payoffs") {
  GameDescription d;
  d.nodes = {NodeId{}, NodeId{{"a", "b"}}};
  d.owner[NodeId{}] = "1";
  d.payoff[NodeId{{"a", "b"}}] = "x";
  CHECK_THROWS_AS(Game::from_description(d), InputError);

  GameDescription no_root;
  no_root.nodes = {NodeId{{"a"}}};
  CHECK_THROWS_AS(Game::from_description(no_root), InputError);

  GameDescription owner_at_leaf;
  owner_at_leaf.nodes = {NodeId{}};
  owner_at_leaf.owner[NodeId{}] = "1";
  owner_at_leaf.payoff[NodeId{}] = "x";
  CHECK_THROWS_AS(Game::from_description(owner_at_leaf), InputError);
}

TEST_CASE("declared players and outcomes are kept") {
  const Game g = load_game(R"({
    "tree": {"outcome": "x"},
    "players": ["3"],
    "outcomes": ["y"],
    "preferences": {"2": {"ranking": [["x"], ["y"]]}}})");
  CHECK(g.players() == std::vector<std::string>{"2", "3"});
  CHECK(g.outcomes() == std::vector<std::string>{"x", "y"});
  CHECK(g.preferences().of(0).prefers(0, 1));
}

TEST_CASE("json output loads back to the same game") {
  for (const auto& name : {"fig1", "fig4_left", "fig5_left", "fig5_right",
                           "leaf"}) {
    const Game g = fixture_game(name);
    CHECK(load_game(game_to_json(g).dump()) == g);
  }
}

TEST_CASE("preference documents round trip") {
  const auto p = fixture_preferences("table2");
  CHECK(load_preference_profile(preference_profile_to_json(p)) == p);
}

TEST_CASE("with_preferences keeps the tree") {
  const Game g = fixture_game("fig1");
  const Game v = g.with_preferences(fixture_preferences("fig1_variant"));
  CHECK(v == fixture_game("fig1_variant"));
  CHECK_THROWS_AS(g.with_preferences(fixture_preferences("table2")),
                  PreconditionError);
}

TEST_CASE("fan games") {
  const auto p = fixture_preferences("fig1");
  const Game g = fan_game(p, 1, {0, 2, 2});
  CHECK(g.decision_count() == 1);
  CHECK(g.profile_count() == 3);
  CHECK(g.actions() == std::vector<std::string>{"0", "1", "2"});
  CHECK(g.outcomes() == p.outcomes);
}

TEST_CASE("bundled fixtures match the files on disk") {
  for (const auto& name : fixture_names()) {
    CAPTURE(name);
    std::ifstream in(std::string(SEQDYN_FIXTURE_DIR) + "/" + name + ".json");
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == fixture_document(name));
  }
  CHECK_THROWS_AS(fixture_document("nope"), InputError);
}
