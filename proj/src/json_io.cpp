#include "seqdyn/json_io.hpp"

#include <fstream>
#include <sstream>

#include "seqdyn/error.hpp"

namespace seqdyn {

namespace {

const Json& member(const Json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw InputError(where + ": missing \"" + key + "\"");
  }
  return *it;
}

std::string as_label(const Json& v, const std::string& where) {
  if (!v.is_string()) throw InputError(where + ": expected a string");
  return v.get<std::string>();
}

void read_tree(const Json& t, NodeId id, GameDescription& d) {
  const std::string where = "tree node /" + [&] {
    std::string s;
    for (std::size_t k = 0; k < id.path.size(); ++k) {
      if (k > 0) s += '/';
      s += id.path[k];
    }
    return s;
  }();
  if (!t.is_object()) throw InputError(where + ": expected an object");
  d.nodes.push_back(id);
  const bool has_outcome = t.contains("outcome");
  const bool has_player = t.contains("player") || t.contains("moves");
  if (has_outcome == has_player) {
    throw InputError(where +
                     ": give either \"outcome\" or \"player\" with \"moves\"");
  }
  if (has_outcome) {
    d.payoff[id] = as_label(t.at("outcome"), where);
    return;
  }
  d.owner[id] = as_label(member(t, "player", where), where);
  const Json& moves = member(t, "moves", where);
  if (!moves.is_object() || moves.empty()) {
    throw InputError(where + ": \"moves\" must be a non-empty object");
  }
  for (const auto& [action, child] : moves.items()) {
    NodeId next = id;
    next.path.push_back(action);
    read_tree(child, std::move(next), d);
  }
}

RelationSpec read_relation(const std::string& who, const Json& spec) {
  const std::string where = "preferences of " + who;
  if (!spec.is_object()) throw InputError(where + ": expected an object");
  if (spec.contains("pairs") == spec.contains("ranking")) {
    throw InputError(where + ": give exactly one of \"pairs\" or \"ranking\"");
  }
  if (spec.contains("pairs")) {
    PairList list;
    const Json& pairs = spec.at("pairs");
    if (!pairs.is_array()) throw InputError(where + ": pairs must be a list");
    for (const Json& pr : pairs) {
      if (!pr.is_array() || pr.size() != 2) {
        throw InputError(where + ": each pair must be [worse, better]");
      }
      list.pairs.emplace_back(as_label(pr[0], where), as_label(pr[1], where));
    }
    return list;
  }
  Ranking ranking;
  const Json& classes = spec.at("ranking");
  if (!classes.is_array()) throw InputError(where + ": ranking must be a list");
  for (const Json& cls : classes) {
    auto& out = ranking.classes.emplace_back();
    if (cls.is_string()) {
      out.push_back(cls.get<std::string>());
      continue;
    }
    if (!cls.is_array()) {
      throw InputError(where + ": ranking entries must be lists of outcomes");
    }
    for (const Json& o : cls) out.push_back(as_label(o, where));
  }
  return ranking;
}

void read_string_list(const Json& doc, const char* key,
                      std::vector<std::string>& out) {
  if (!doc.contains(key)) return;
  const Json& list = doc.at(key);
  if (!list.is_array()) {
    throw InputError(std::string("\"") + key + "\" must be a list");
  }
  for (const Json& v : list) out.push_back(as_label(v, key));
}

Json parse_document(const std::string& document) {
  try {
    return Json::parse(document);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("parse error: ") + e.what());
  }
}

void read_preferences(const Json& doc,
                      std::map<std::string, RelationSpec>& out) {
  if (!doc.contains("preferences")) return;
  const Json& prefs = doc.at("preferences");
  if (!prefs.is_object()) throw InputError("\"preferences\" must be an object");
  for (const auto& [who, spec] : prefs.items()) {
    out.emplace(who, read_relation(who, spec));
  }
}

}  // namespace

Game load_game(const std::string& document) {
  const Json doc = parse_document(document);
  if (!doc.is_object()) throw InputError("game document must be an object");
  GameDescription d;
  read_tree(member(doc, "tree", "game document"), NodeId{}, d);
  read_preferences(doc, d.preferences);
  read_string_list(doc, "players", d.extra_players);
  read_string_list(doc, "outcomes", d.extra_outcomes);
  return Game::from_description(d);
}

Game load_game_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_game(buffer.str());
}

namespace {

Json tree_to_json(const Game& g, NodeIndex h) {
  const Node& n = g.node(h);
  Json t = Json::object();
  if (n.terminal()) {
    t["outcome"] = g.outcomes()[*n.outcome];
    return t;
  }
  t["player"] = g.players()[*n.owner];
  Json moves = Json::object();
  for (const Move& m : n.moves) moves[m.action] = tree_to_json(g, m.child);
  t["moves"] = std::move(moves);
  return t;
}

Json relations_to_json(const PreferenceProfile& p) {
  Json prefs = Json::object();
  for (PlayerIndex i = 0; i < p.player_count(); ++i) {
    Json pairs = Json::array();
    for (const auto& [a, b] : p.of(i).pairs()) {
      pairs.push_back(Json::array({p.outcomes[a], p.outcomes[b]}));
    }
    prefs[p.players[i]] = Json{{"pairs", std::move(pairs)}};
  }
  return prefs;
}

}  // namespace

Json game_to_json(const Game& g) {
  Json doc = Json::object();
  doc["tree"] = tree_to_json(g, g.root());
  doc["preferences"] = relations_to_json(g.preferences());
  doc["players"] = g.players();
  doc["outcomes"] = g.outcomes();
  return doc;
}

PreferenceProfile load_preference_profile(const Json& doc) {
  if (!doc.is_object()) throw InputError("preference document must be an object");
  std::vector<std::string> outcomes;
  read_string_list(doc, "outcomes", outcomes);
  std::map<std::string, RelationSpec> specs;
  read_preferences(doc, specs);
  std::vector<std::string> players;
  read_string_list(doc, "players", players);
  for (const auto& [who, spec] : specs) players.push_back(who);
  PreferenceProfile p = make_profile(outcomes, players);
  auto index = [&](const std::string& label) {
    auto o = p.find_outcome(label);
    if (!o) throw InputError("preferences mention unknown outcome " + label);
    return *o;
  };
  for (const auto& [who, spec] : specs) {
    const PlayerIndex i = *p.find_player(who);
    if (const auto* list = std::get_if<PairList>(&spec)) {
      for (const auto& [a, b] : list->pairs) {
        p.relations[i].add(index(a), index(b));
      }
    } else {
      std::vector<std::vector<OutcomeIndex>> ranking;
      for (const auto& cls : std::get<Ranking>(spec).classes) {
        auto& out = ranking.emplace_back();
        for (const auto& label : cls) out.push_back(index(label));
      }
      try {
        p.relations[i] =
            PreferenceRelation::from_ranking(p.outcome_count(), ranking);
      } catch (const PreconditionError& e) {
        throw InputError("ranking of player " + who + ": " + e.what());
      }
    }
  }
  return p;
}

Json preference_profile_to_json(const PreferenceProfile& p) {
  Json doc = Json::object();
  doc["outcomes"] = p.outcomes;
  doc["players"] = p.players;
  doc["preferences"] = relations_to_json(p);
  return doc;
}

}  // namespace seqdyn
