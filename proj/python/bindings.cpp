#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "seqdyn/cli.hpp"
#include "seqdyn/dynamics.hpp"
#include "seqdyn/equilibria.hpp"
#include "seqdyn/error.hpp"
#include "seqdyn/fixtures.hpp"
#include "seqdyn/harness.hpp"
#include "seqdyn/json_io.hpp"

namespace py = pybind11;
using namespace seqdyn;

namespace {

std::vector<std::string> names(const Game& g,
                               const std::vector<StrategyProfile>& v) {
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const auto& s : v) out.push_back(profile_name(g, s));
  return out;
}

py::dict graph_dict(const Game& g, const std::string& dynamics) {
  const auto graph = build_graph(g, parse_dynamics(dynamics));
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& e : graph.edges) {
    edges.emplace_back(profile_name(g, graph.vertices[e.from]),
                       profile_name(g, graph.vertices[e.to]));
  }
  const auto t = terminates(graph);
  std::vector<std::string> cycle;
  for (std::size_t v : t.cycle) cycle.push_back(profile_name(g, graph.vertices[v]));
  py::dict d;
  d["edges"] = edges;
  d["terminates"] = t.terminates;
  d["cycle"] = cycle;
  d["terminal"] = names(g, terminal_profiles(graph));
  return d;
}

py::dict equilibria_dict(const Game& g) {
  const auto sets = equilibrium_sets(g);
  py::dict d;
  d["ne"] = names(g, sets.ne);
  d["spe"] = names(g, sets.spe);
  d["sne"] = names(g, sets.sne);
  return d;
}

PreferenceProfile prefs_from(const std::string& document) {
  try {
    return load_preference_profile(Json::parse(document));
  } catch (const Json::exception& e) {
    throw InputError(e.what());
  }
}

std::optional<std::vector<std::vector<std::string>>> layers_of(
    const PreferenceProfile& p) {
  const auto l = layer_partition(p);
  if (!l) return std::nullopt;
  std::vector<std::vector<std::string>> out;
  for (const auto& layer : l->layers) {
    auto& named = out.emplace_back();
    for (OutcomeIndex o : layer) named.push_back(p.outcomes[o]);
  }
  return out;
}

std::string verify_json(const std::string& id, std::optional<std::size_t> trials,
                        std::optional<std::uint64_t> seed,
                        std::optional<std::string> kind) {
  const auto& info = claim_info(parse_claim(id));
  GenParams p = info.defaults;
  if (seed) p.seed = *seed;
  if (kind) {
    const auto k = parse_pref_kind(*kind);
    if (!k) throw InputError("unknown preference kind: " + *kind);
    p.pref_kind = *k;
  }
  return verify(info.claim, p, trials.value_or(info.default_trials))
      .to_json()
      .dump();
}

}  // namespace

PYBIND11_MODULE(_seqdyn, m) {
  m.doc() = "Improvement dynamics in sequential games";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError",
                                            PyExc_ValueError);
  py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);

  py::class_<Game>(m, "Game")
      .def_static("from_json", &load_game, py::arg("document"))
      .def_static(
          "from_file",
          [](const std::string& path) { return load_game_file(path); },
          py::arg("path"))
      .def_static("fixture", &fixture_game, py::arg("name"))
      .def("to_json", [](const Game& g) { return game_to_json(g).dump(); })
      .def_property_readonly("players", &Game::players)
      .def_property_readonly("outcomes", &Game::outcomes)
      .def_property_readonly("profile_count", &Game::profile_count)
      .def("profiles",
           [](const Game& g) { return names(g, enumerate_profiles(g)); })
      .def(
          "outcome",
          [](const Game& g, const std::string& profile) {
            return g.outcomes()[outcome_of(g, parse_profile(g, profile))];
          },
          py::arg("profile"))
      .def("graph", &graph_dict, py::arg("dynamics"))
      .def(
          "to_dot",
          [](const Game& g, const std::string& dynamics) {
            const auto spec = parse_dynamics(dynamics);
            return to_dot(g, build_graph(g, spec), spec);
          },
          py::arg("dynamics"))
      .def("equilibria", &equilibria_dict)
      .def(
          "is_nash",
          [](const Game& g, const std::string& s) {
            return is_nash(g, parse_profile(g, s)).holds;
          },
          py::arg("profile"))
      .def(
          "is_spe",
          [](const Game& g, const std::string& s) {
            return is_spe(g, parse_profile(g, s)).holds;
          },
          py::arg("profile"))
      .def(
          "is_sne",
          [](const Game& g, const std::string& s) {
            return is_sne(g, parse_profile(g, s)).holds;
          },
          py::arg("profile"))
      .def("__eq__", [](const Game& a, const Game& b) { return a == b; });

  m.def("fixture_names", &fixture_names);
  m.def("fixture_document", &fixture_document, py::arg("name"));

  m.def(
      "out_of_pattern",
      [](const std::string& doc) { return out_of_pattern(prefs_from(doc)); },
      py::arg("preferences"));
  m.def(
      "layers", [](const std::string& doc) { return layers_of(prefs_from(doc)); },
      py::arg("preferences"));
  m.def(
      "is_layerable",
      [](const std::string& doc) { return is_layerable_oracle(prefs_from(doc)); },
      py::arg("preferences"));

  m.def("claim_ids", [] {
    std::vector<std::string> ids;
    for (const auto& c : all_claims()) ids.push_back(c.id);
    return ids;
  });
  m.def("verify", &verify_json, py::arg("claim"),
        py::arg("trials") = py::none(), py::arg("seed") = py::none(),
        py::arg("kind") = py::none());

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
