#include "seqdyn/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "seqdyn/dynamics.hpp"
#include "seqdyn/equilibria.hpp"
#include "seqdyn/error.hpp"
#include "seqdyn/harness.hpp"
#include "seqdyn/json_io.hpp"

namespace seqdyn {

namespace {

const std::vector<std::string> kAnalyzeDynamics = {"SI",  "SI,A",  "SI,1P",
                                                   "I,A", "I,L",   "I,L,1P"};

struct Options {
  bool json = false;
  bool long_names = false;
  std::uint64_t cap = kDefaultProfileCap;

  NameStyle style(const Game& g) const {
    return long_names || !g.single_char_actions() ? NameStyle::kLong
                                                  : NameStyle::kCompact;
  }
};

std::uint64_t profile_cap_from_env() {
  const char* raw = std::getenv("SEQDYN_PROFILE_CAP");
  if (raw == nullptr || *raw == '\0') return kDefaultProfileCap;
  const std::string text(raw);
  if (!std::all_of(text.begin(), text.end(),
                   [](unsigned char c) { return std::isdigit(c) != 0; })) {
    throw InputError("SEQDYN_PROFILE_CAP must be a positive integer");
  }
  std::uint64_t value = 0;
  try {
    value = std::stoull(text);
  } catch (const std::exception&) {
    throw InputError("SEQDYN_PROFILE_CAP is out of range");
  }
  if (value == 0) throw InputError("SEQDYN_PROFILE_CAP must be positive");
  return value;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return Json::parse(buffer.str());
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::string names(const Game& g, const std::vector<StrategyProfile>& v,
                  NameStyle style) {
  std::string out = "{";
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k > 0) out += ", ";
    out += profile_name(g, v[k], style);
  }
  return out + "}";
}

Json name_list(const Game& g, const std::vector<StrategyProfile>& v,
               NameStyle style) {
  Json out = Json::array();
  for (const auto& s : v) out.push_back(profile_name(g, s, style));
  return out;
}

Json cycle_json(const Game& g, const DynamicsGraph& graph,
                const TerminationResult& t, NameStyle style) {
  Json out = Json::array();
  for (std::size_t v : t.cycle) {
    out.push_back(profile_name(g, graph.vertices[v], style));
  }
  return out;
}

std::string cycle_text(const Game& g, const DynamicsGraph& graph,
                       const TerminationResult& t, NameStyle style) {
  std::string out;
  for (std::size_t v : t.cycle) {
    out += profile_name(g, graph.vertices[v], style) + " -> ";
  }
  return out + profile_name(g, graph.vertices[t.cycle.front()], style);
}

std::string player_list(const Game& g, const std::vector<PlayerIndex>& ps) {
  std::string out;
  for (std::size_t k = 0; k < ps.size(); ++k) {
    if (k > 0) out += ',';
    out += g.players()[ps[k]];
  }
  return out;
}

// ---------------------------------------------------------------------------

int cmd_analyze(const std::string& file, std::vector<std::string> specs,
                const Options& opt, std::ostream& out) {
  const Game g = load_game_file(file);
  const NameStyle style = opt.style(g);
  if (specs.empty()) specs = kAnalyzeDynamics;
  const auto profiles = enumerate_profiles(g, opt.cap);

  Json dyn = Json::array();
  std::ostringstream text;
  text << "profiles: " << profiles.size() << "\n";
  for (const auto& raw : specs) {
    const DynamicsSpec spec = parse_dynamics(raw);
    const auto graph = build_graph(g, spec, opt.cap);
    const auto t = terminates(graph);
    const auto term = terminal_profiles(graph);
    dyn.push_back(Json{{"dynamics", to_string(spec)},
                       {"edges", graph.edges.size()},
                       {"terminates", t.terminates},
                       {"cycle", cycle_json(g, graph, t, style)},
                       {"terminal", name_list(g, term, style)}});
    text << "{" << to_string(spec) << "}: "
         << (t.terminates ? "terminates" : "does not terminate") << ", "
         << graph.edges.size() << " edges, terminal " << names(g, term, style);
    if (!t.terminates) text << ", cycle " << cycle_text(g, graph, t, style);
    text << "\n";
  }

  std::vector<StrategyProfile> ne, spe, sne;
  for (const auto& s : profiles) {
    if (is_nash(g, s).holds) ne.push_back(s);
    if (is_spe(g, s).holds) spe.push_back(s);
    if (is_sne(g, s, opt.cap).holds) sne.push_back(s);
  }
  text << "NE: " << names(g, ne, style) << "\n"
       << "SPE: " << names(g, spe, style) << "\n"
       << "SNE: " << names(g, sne, style) << "\n";

  if (opt.json) {
    out << Json{{"profiles", profiles.size()},
                {"dynamics", std::move(dyn)},
                {"ne", name_list(g, ne, style)},
                {"spe", name_list(g, spe, style)},
                {"sne", name_list(g, sne, style)}}
               .dump(2)
        << "\n";
  } else {
    out << text.str();
  }
  return kExitOk;
}

int cmd_graph(const std::string& file, const std::string& raw_spec,
              const std::optional<std::string>& dot_path,
              bool expect_terminating, const Options& opt, std::ostream& out) {
  const Game g = load_game_file(file);
  const NameStyle style = opt.style(g);
  const DynamicsSpec spec = parse_dynamics(raw_spec);
  const auto graph = build_graph(g, spec, opt.cap);
  const auto t = terminates(graph);
  const auto term = terminal_profiles(graph);

  if (dot_path) {
    const std::string dot = to_dot(g, graph, spec, style);
    if (*dot_path == "-") {
      out << dot;
    } else {
      std::ofstream f(*dot_path);
      if (!f) throw InputError("cannot write " + *dot_path);
      f << dot;
    }
  }
  if (!dot_path || *dot_path != "-") {
    if (opt.json) {
      Json edges = Json::array();
      for (const auto& e : graph.edges) {
        edges.push_back(
            Json{{"from", profile_name(g, graph.vertices[e.from], style)},
                 {"to", profile_name(g, graph.vertices[e.to], style)},
                 {"players", player_list(g, e.diff.players)}});
      }
      out << Json{{"dynamics", to_string(spec)},
                  {"vertices", name_list(g, graph.vertices, style)},
                  {"edges", std::move(edges)},
                  {"terminates", t.terminates},
                  {"cycle", cycle_json(g, graph, t, style)},
                  {"terminal", name_list(g, term, style)}}
                 .dump(2)
          << "\n";
    } else {
      out << "{" << to_string(spec) << "}: " << graph.vertex_count()
          << " profiles, " << graph.edges.size() << " edges\n";
      for (const auto& e : graph.edges) {
        out << profile_name(g, graph.vertices[e.from], style) << " -> "
            << profile_name(g, graph.vertices[e.to], style) << "  ["
            << player_list(g, e.diff.players) << "]\n";
      }
      out << "terminates: " << (t.terminates ? "yes" : "no") << "\n";
      if (!t.terminates) {
        out << "cycle: " << cycle_text(g, graph, t, style) << "\n";
      }
      out << "terminal: " << names(g, term, style) << "\n";
    }
  }
  return expect_terminating && !t.terminates ? kExitFinding : kExitOk;
}

std::string outcome_move(const Game& g, OutcomeIndex from, OutcomeIndex to) {
  return "(" + g.outcomes()[from] + " -> " + g.outcomes()[to] + ")";
}

int cmd_equilibria(const std::string& file, const std::string& kind,
                   const Options& opt, std::ostream& out) {
  const Game g = load_game_file(file);
  const NameStyle style = opt.style(g);
  const bool want_ne = kind.empty() || kind == "ne";
  const bool want_spe = kind.empty() || kind == "spe";
  const bool want_sne = kind.empty() || kind == "sne";

  Json doc = Json::object();
  for (const auto& s : enumerate_profiles(g, opt.cap)) {
    const std::string name = profile_name(g, s, style);
    const OutcomeIndex here = outcome_of(g, s);
    Json entry = Json::object();
    Json witnesses = Json::object();
    std::vector<std::string> labels, notes;
    if (want_ne) {
      const auto r = is_nash(g, s);
      entry["ne"] = r.holds;
      if (r.holds) {
        labels.push_back("NE");
      } else {
        const auto& w = *r.witness;
        const std::string note =
            "player " + g.players()[w.player] + " switches to " +
            profile_name(g, w.profile, style) + " " +
            outcome_move(g, here, outcome_of(g, w.profile));
        witnesses["ne"] = note;
        notes.push_back("not NE: " + note);
      }
    }
    if (want_spe) {
      const auto r = is_spe(g, s);
      entry["spe"] = r.holds;
      if (r.holds) {
        labels.push_back("SPE");
      } else {
        const auto& w = *r.witness;
        const std::string note =
            "at node " + node_name(g, w.node, style) + " player " +
            g.players()[w.deviation.player] + " switches to " +
            profile_name(g, w.deviation.profile, style) + " " +
            outcome_move(g, outcome_from(g, s, w.node),
                         outcome_from(g, w.deviation.profile, w.node));
        witnesses["spe"] = note;
        notes.push_back("not SPE: " + note);
      }
    }
    if (want_sne) {
      const auto r = is_sne(g, s, opt.cap);
      entry["sne"] = r.holds;
      if (r.holds) {
        labels.push_back("SNE");
      } else {
        const auto& w = *r.witness;
        const std::string note =
            "coalition {" + player_list(g, w.coalition) + "} switches to " +
            profile_name(g, w.profile, style) + " " +
            outcome_move(g, here, outcome_of(g, w.profile));
        witnesses["sne"] = note;
        notes.push_back("not SNE: " + note);
      }
    }
    if (opt.json) {
      entry["witnesses"] = std::move(witnesses);
      doc[name] = std::move(entry);
      continue;
    }
    out << name << " [" << g.outcomes()[here] << "]";
    for (const auto& l : labels) out << " " << l;
    out << "\n";
    for (const auto& n : notes) out << "  " << n << "\n";
  }
  if (opt.json) out << doc.dump(2) << "\n";
  return kExitOk;
}

std::string relation_chain(const PreferenceProfile& p,
                           const std::vector<OutcomeIndex>& cycle) {
  std::string out;
  for (OutcomeIndex o : cycle) out += p.outcomes[o] + " < ";
  return out + p.outcomes[cycle.front()];
}

std::string layers_text(const PreferenceProfile& p, const LayerPartition& l) {
  std::string out = "[";
  for (std::size_t k = 0; k < l.layers.size(); ++k) {
    if (k > 0) out += ",";
    out += "{";
    auto layer = l.layers[k];
    std::sort(layer.begin(), layer.end());
    for (std::size_t m = 0; m < layer.size(); ++m) {
      if (m > 0) out += ",";
      out += p.outcomes[layer[m]];
    }
    out += "}";
  }
  return out + "]";
}

struct CheckResult {
  std::string name;
  bool holds;
  std::string detail;
  Json json;
};

CheckResult check_acyclic(const PreferenceProfile& p) {
  CheckResult r{"acyclic", true, {}, Json::object()};
  for (PlayerIndex i = 0; i < p.player_count(); ++i) {
    auto cycle = find_preference_cycle(p.of(i));
    r.json[p.players[i]] = !cycle.has_value();
    if (cycle && r.holds) {
      r.holds = false;
      r.detail = "player " + p.players[i] + ": " + relation_chain(p, *cycle);
    }
  }
  return r;
}

template <typename Pred>
CheckResult check_each(const PreferenceProfile& p, const std::string& name,
                       Pred pred) {
  CheckResult r{name, true, {}, Json::object()};
  std::string failing;
  for (PlayerIndex i = 0; i < p.player_count(); ++i) {
    const bool ok = pred(p.of(i));
    r.json[p.players[i]] = ok;
    if (!ok) {
      r.holds = false;
      failing += (failing.empty() ? "" : ",") + p.players[i];
    }
  }
  if (!r.holds) r.detail = "fails for player " + failing;
  return r;
}

CheckResult check_pattern(const PreferenceProfile& p) {
  CheckResult r{"out of pattern", true, {}, Json::object()};
  const auto& o = p.outcomes;
  if (auto m = find_main_pattern(p)) {
    const std::string i = p.players[m->i], j = p.players[m->j];
    r.holds = false;
    r.detail = "main pattern " + o[m->x] + " <" + i + " " + o[m->y] + " <" +
               i + " " + o[m->z] + ", " + o[m->y] + " <" + j + " " + o[m->z] +
               " <" + j + " " + o[m->x];
    r.json = Json{{"pattern", "main"},
                  {"x", o[m->x]},
                  {"y", o[m->y]},
                  {"z", o[m->z]},
                  {"i", i},
                  {"j", j}};
  } else if (auto s = find_secondary_pattern(p)) {
    const std::string i = p.players[s->i], j = p.players[s->j];
    r.holds = false;
    r.detail = "secondary pattern " + o[s->w] + " <" + i + " " + o[s->x] +
               " <" + i + " " + o[s->y] + " <" + i + " " + o[s->z] + ", " +
               o[s->x] + " ~" + j + " " + o[s->z] + " <" + j + " " + o[s->w] +
               " ~" + j + " " + o[s->y];
    r.json = Json{{"pattern", "secondary"},
                  {"w", o[s->w]},
                  {"x", o[s->x]},
                  {"y", o[s->y]},
                  {"z", o[s->z]},
                  {"i", i},
                  {"j", j}};
  }
  return r;
}

CheckResult check_layers(const PreferenceProfile& p) {
  CheckResult r{"layers", true, {}, Json()};
  for (PlayerIndex i = 0; i < p.player_count(); ++i) {
    if (!is_strict_weak_order(p.of(i))) {
      r.holds = false;
      r.detail = "player " + p.players[i] + " is not a strict weak order";
      return r;
    }
  }
  auto l = layer_partition(p);
  if (!l) {
    r.holds = false;
    r.detail = "none";
    return r;
  }
  r.detail = layers_text(p, *l);
  r.json = Json::array();
  for (const auto& layer : l->layers) {
    Json names = Json::array();
    auto sorted = layer;
    std::sort(sorted.begin(), sorted.end());
    for (OutcomeIndex o : sorted) names.push_back(p.outcomes[o]);
    r.json.push_back(std::move(names));
  }
  return r;
}

int cmd_prefs(const std::string& file, const std::string& check,
              const Options& opt, std::ostream& out) {
  const Json doc = read_json_file(file);
  const PreferenceProfile p = doc.is_object() && doc.contains("tree")
                                  ? load_game(doc.dump()).preferences()
                                  : load_preference_profile(doc);
  std::vector<CheckResult> results;
  auto want = [&](const char* name) { return check.empty() || check == name; };
  if (want("acyclic")) results.push_back(check_acyclic(p));
  if (want("swo")) {
    results.push_back(check_each(p, "strict weak orders", [](const auto& r) {
      return is_strict_weak_order(r);
    }));
  }
  if (want("slo")) {
    results.push_back(check_each(p, "strict linear orders", [](const auto& r) {
      return is_strict_linear_order(r);
    }));
  }
  if (want("pattern")) results.push_back(check_pattern(p));
  if (want("layers")) results.push_back(check_layers(p));

  if (opt.json) {
    Json j = Json::object();
    for (const auto& r : results) {
      j[r.name] = Json{{"holds", r.holds}, {"detail", r.json}};
    }
    out << j.dump(2) << "\n";
  } else {
    for (const auto& r : results) {
      if (r.name == "layers") {
        out << "layers: " << r.detail << "\n";
        continue;
      }
      out << r.name << ": " << (r.holds ? "yes" : "no");
      if (!r.detail.empty()) out << " (" << r.detail << ")";
      out << "\n";
    }
  }
  if (!check.empty() && !results.front().holds) return kExitFinding;
  return kExitOk;
}

int cmd_decompose(const std::string& file, const std::string& from,
                  const std::string& to, const Options& opt, std::ostream& out,
                  std::ostream& err) {
  const Game g = load_game_file(file);
  const NameStyle style = opt.style(g);
  const StrategyProfile s = parse_profile(g, from);
  const StrategyProfile t = parse_profile(g, to);
  if (s == t || !satisfies(Property::kSI, g, s, t)) {
    err << "(" << from << ", " << to << ") is not an SI update\n";
    return kExitFinding;
  }
  const auto chain = decompose_si_step(g, s, t);
  if (opt.json) {
    Json steps = Json::array();
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
      const auto d = diff(g, chain[k], chain[k + 1]);
      steps.push_back(Json{{"from", profile_name(g, chain[k], style)},
                           {"to", profile_name(g, chain[k + 1], style)},
                           {"node", node_name(g, d.nodes.front(), style)}});
    }
    out << Json{{"chain", name_list(g, chain, style)}, {"steps", steps}}.dump(2)
        << "\n";
    return kExitOk;
  }
  for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
    const auto d = diff(g, chain[k], chain[k + 1]);
    out << profile_name(g, chain[k], style) << " -> "
        << profile_name(g, chain[k + 1], style) << "  (node "
        << node_name(g, d.nodes.front(), style) << ")\n";
  }
  return kExitOk;
}

int cmd_verify(const std::string& claim, std::optional<std::size_t> trials,
               std::optional<std::uint64_t> seed,
               const std::optional<std::string>& kind, const Options& opt,
               std::ostream& out) {
  std::vector<ClaimInfo> selected;
  if (claim == "all") {
    selected = all_claims();
  } else {
    selected.push_back(claim_info(parse_claim(claim)));
  }
  std::optional<PrefKind> pref_kind;
  if (kind) {
    pref_kind = parse_pref_kind(*kind);
    if (!pref_kind) throw InputError("unknown preference kind " + *kind);
  }
  bool all_passed = true;
  Json reports = Json::array();
  for (const auto& info : selected) {
    GenParams p = info.defaults;
    if (seed) p.seed = *seed;
    if (pref_kind) p.pref_kind = *pref_kind;
    const auto report = verify(info.claim, p, trials.value_or(info.default_trials));
    all_passed = all_passed && report.passed();
    if (opt.json) {
      reports.push_back(report.to_json());
      continue;
    }
    out << info.id << ": " << (report.passed() ? "PASS" : "FAIL") << "  "
        << info.statement << "\n"
        << "  trials " << report.trials << ", instances " << report.instances
        << ", checked " << report.checked << ", failed " << report.failed
        << "\n";
    if (!report.failures.empty()) {
      const auto& f = report.failures.front();
      out << "  first counterexample ("
          << (f.seed ? "seed " + std::to_string(*f.seed)
                     : "fixture " + f.fixture)
          << (f.variant.empty() ? "" : ", " + f.variant)
          << "): " << f.counterexample << "\n";
    }
  }
  if (opt.json) {
    out << (reports.size() == 1 ? reports.front() : reports).dump(2) << "\n";
  }
  return all_passed ? kExitOk : kExitFinding;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Dynamics and equilibria of sequential games", "seqdyn"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_flag("--json", opt.json, "Machine-readable output");
  app.add_flag("--long-names", opt.long_names,
               "Name profiles by node=action lists");

  std::string file;
  std::vector<std::string> specs;
  std::string spec = "I,L";
  std::optional<std::string> dot;
  bool expect_terminating = false;
  std::string kind;
  std::string check;
  std::string from, to;
  std::string claim;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> pref_kind;

  auto* analyze = app.add_subcommand("analyze", "Summarize a game");
  analyze->add_option("file", file, "Game JSON")->required();
  analyze->add_option("--dynamics", specs,
                      "Dynamics to report (repeatable; default: the standard "
                      "six)");

  auto* graph = app.add_subcommand("graph", "Build one dynamics graph");
  graph->add_option("file", file, "Game JSON")->required();
  graph->add_option("--dynamics", spec, "Property tags or mixed:PLAYERS")
      ->capture_default_str();
  graph->add_option("--dot", dot, "Write DOT to a file, or - for stdout");
  graph->add_flag("--expect-terminating", expect_terminating,
                  "Exit 1 when the graph has a cycle");

  auto* equilibria = app.add_subcommand("equilibria", "Classify profiles");
  equilibria->add_option("file", file, "Game JSON")->required();
  equilibria->add_option("--kind", kind, "ne, spe or sne (default: all)")
      ->check(CLI::IsMember({"ne", "spe", "sne"}));

  auto* prefs = app.add_subcommand("prefs", "Classify preferences");
  prefs->add_option("file", file, "Game or preference JSON")->required();
  prefs->add_option("--check", check, "acyclic, swo, slo, pattern or layers")
      ->check(CLI::IsMember({"acyclic", "swo", "slo", "pattern", "layers"}));

  auto* decompose =
      app.add_subcommand("decompose", "Split an SI update into atomic steps");
  decompose->add_option("file", file, "Game JSON")->required();
  decompose->add_option("--from", from, "Source profile")->required();
  decompose->add_option("--to", to, "Target profile")->required();

  auto* verify_cmd = app.add_subcommand("verify", "Run a claim suite");
  verify_cmd->add_option("--claim", claim, "Claim id, or all")->required();
  verify_cmd->add_option("--trials", trials, "Number of random trials");
  verify_cmd->add_option("--seed", seed, "Base seed");
  verify_cmd->add_option("--kind", pref_kind, "Preference generator");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    opt.cap = profile_cap_from_env();
    if (*analyze) return cmd_analyze(file, specs, opt, out);
    if (*graph) {
      return cmd_graph(file, spec, dot, expect_terminating, opt, out);
    }
    if (*equilibria) return cmd_equilibria(file, kind, opt, out);
    if (*prefs) return cmd_prefs(file, check, opt, out);
    if (*decompose) return cmd_decompose(file, from, to, opt, out, err);
    if (*verify_cmd) {
      return cmd_verify(claim, trials, seed, pref_kind, opt, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace seqdyn
