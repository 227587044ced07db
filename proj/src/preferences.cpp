#include "seqdyn/preferences.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "seqdyn/error.hpp"

namespace seqdyn {

PreferenceRelation::PreferenceRelation(std::size_t outcome_count)
    : size_(outcome_count), bits_(outcome_count * outcome_count, 0) {}

PreferenceRelation PreferenceRelation::from_pairs(
    std::size_t outcome_count,
    const std::vector<std::pair<OutcomeIndex, OutcomeIndex>>& pairs) {
  PreferenceRelation r(outcome_count);
  for (const auto& [worse, better] : pairs) {
    if (worse >= outcome_count || better >= outcome_count) {
      throw PreconditionError("preference pair refers to an unknown outcome");
    }
    r.add(worse, better);
  }
  return r;
}

PreferenceRelation PreferenceRelation::from_ranking(
    std::size_t outcome_count,
    const std::vector<std::vector<OutcomeIndex>>& ranking) {
  PreferenceRelation r(outcome_count);
  std::vector<bool> seen(outcome_count, false);
  for (const auto& cls : ranking) {
    for (OutcomeIndex o : cls) {
      if (o >= outcome_count) {
        throw PreconditionError("ranking refers to an unknown outcome");
      }
      if (seen[o]) {
        throw PreconditionError("outcome listed twice in a ranking");
      }
      seen[o] = true;
    }
  }
  for (std::size_t lo = 0; lo < ranking.size(); ++lo) {
    for (std::size_t hi = lo + 1; hi < ranking.size(); ++hi) {
      for (OutcomeIndex x : ranking[lo]) {
        for (OutcomeIndex y : ranking[hi]) r.add(x, y);
      }
    }
  }
  return r;
}

std::vector<std::pair<OutcomeIndex, OutcomeIndex>> PreferenceRelation::pairs()
    const {
  std::vector<std::pair<OutcomeIndex, OutcomeIndex>> out;
  for (OutcomeIndex x = 0; x < size_; ++x) {
    for (OutcomeIndex y = 0; y < size_; ++y) {
      if (prefers(x, y)) out.emplace_back(x, y);
    }
  }
  return out;
}

std::optional<OutcomeIndex> PreferenceProfile::find_outcome(
    const std::string& label) const {
  auto it = std::lower_bound(outcomes.begin(), outcomes.end(), label);
  if (it == outcomes.end() || *it != label) return std::nullopt;
  return static_cast<OutcomeIndex>(it - outcomes.begin());
}

std::optional<PlayerIndex> PreferenceProfile::find_player(
    const std::string& id) const {
  for (PlayerIndex p = 0; p < players.size(); ++p) {
    if (players[p] == id) return p;
  }
  return std::nullopt;
}

namespace {

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isdigit(c) != 0;
  });
}

std::string strip_zeros(const std::string& s) {
  auto pos = s.find_first_not_of('0');
  return pos == std::string::npos ? std::string("0") : s.substr(pos);
}

}  // namespace

bool player_id_less(const std::string& a, const std::string& b) {
  const bool da = all_digits(a);
  const bool db = all_digits(b);
  if (da && db) {
    const std::string sa = strip_zeros(a);
    const std::string sb = strip_zeros(b);
    if (sa.size() != sb.size()) return sa.size() < sb.size();
    if (sa != sb) return sa < sb;
    return a < b;
  }
  if (da != db) return da;
  return a < b;
}

PreferenceProfile make_profile(std::vector<std::string> outcomes,
                               std::vector<std::string> players) {
  std::sort(outcomes.begin(), outcomes.end());
  outcomes.erase(std::unique(outcomes.begin(), outcomes.end()),
                 outcomes.end());
  std::sort(players.begin(), players.end(), player_id_less);
  players.erase(std::unique(players.begin(), players.end()), players.end());
  PreferenceProfile p;
  p.relations.assign(players.size(), PreferenceRelation(outcomes.size()));
  p.outcomes = std::move(outcomes);
  p.players = std::move(players);
  return p;
}

// ---------------------------------------------------------------------------

std::optional<std::vector<OutcomeIndex>> find_preference_cycle(
    const PreferenceRelation& r) {
  const std::size_t n = r.size();
  enum : std::uint8_t { kWhite, kGrey, kBlack };
  std::vector<std::uint8_t> colour(n, kWhite);
  std::vector<OutcomeIndex> path;
  std::optional<std::vector<OutcomeIndex>> cycle;

  std::function<bool(OutcomeIndex)> visit = [&](OutcomeIndex v) {
    colour[v] = kGrey;
    path.push_back(v);
    for (OutcomeIndex w = 0; w < n; ++w) {
      if (!r.prefers(v, w)) continue;
      if (colour[w] == kGrey) {
        auto start = std::find(path.begin(), path.end(), w);
        cycle.emplace(start, path.end());
        return true;
      }
      if (colour[w] == kWhite && visit(w)) return true;
    }
    path.pop_back();
    colour[v] = kBlack;
    return false;
  };
  for (OutcomeIndex v = 0; v < n; ++v) {
    if (colour[v] == kWhite && visit(v)) return cycle;
  }
  return std::nullopt;
}

bool is_acyclic(const PreferenceRelation& r) {
  return !find_preference_cycle(r).has_value();
}

bool is_strict_weak_order(const PreferenceRelation& r) {
  const std::size_t n = r.size();
  for (OutcomeIndex x = 0; x < n; ++x) {
    if (r.prefers(x, x)) return false;
  }
  for (OutcomeIndex x = 0; x < n; ++x) {
    for (OutcomeIndex y = 0; y < n; ++y) {
      for (OutcomeIndex z = 0; z < n; ++z) {
        if (r.prefers(x, y) && r.prefers(y, z) && !r.prefers(x, z)) {
          return false;
        }
        if (x != z && r.indifferent(x, y) && r.indifferent(y, z) &&
            !r.indifferent(x, z)) {
          return false;
        }
      }
    }
  }
  return true;
}

bool is_strict_linear_order(const PreferenceRelation& r) {
  if (!is_strict_weak_order(r)) return false;
  for (OutcomeIndex x = 0; x < r.size(); ++x) {
    for (OutcomeIndex y = x + 1; y < r.size(); ++y) {
      if (r.indifferent(x, y)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

std::optional<MainPatternWitness> find_main_pattern(
    const PreferenceProfile& p) {
  const std::size_t n = p.outcome_count();
  const std::size_t m = p.player_count();
  for (OutcomeIndex x = 0; x < n; ++x) {
    for (OutcomeIndex y = 0; y < n; ++y) {
      for (OutcomeIndex z = 0; z < n; ++z) {
        for (PlayerIndex i = 0; i < m; ++i) {
          const auto& ri = p.of(i);
          if (!ri.prefers(x, y) || !ri.prefers(y, z)) continue;
          for (PlayerIndex j = 0; j < m; ++j) {
            const auto& rj = p.of(j);
            if (rj.prefers(y, z) && rj.prefers(z, x)) {
              return MainPatternWitness{x, y, z, i, j};
            }
          }
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<SecondaryPatternWitness> find_secondary_pattern(
    const PreferenceProfile& p) {
  const std::size_t n = p.outcome_count();
  const std::size_t m = p.player_count();
  for (OutcomeIndex w = 0; w < n; ++w) {
    for (OutcomeIndex x = 0; x < n; ++x) {
      for (OutcomeIndex y = 0; y < n; ++y) {
        for (OutcomeIndex z = 0; z < n; ++z) {
          for (PlayerIndex i = 0; i < m; ++i) {
            const auto& ri = p.of(i);
            if (!ri.prefers(w, x) || !ri.prefers(x, y) || !ri.prefers(y, z)) {
              continue;
            }
            for (PlayerIndex j = 0; j < m; ++j) {
              const auto& rj = p.of(j);
              if (rj.indifferent(x, z) && rj.prefers(z, w) &&
                  rj.indifferent(w, y)) {
                return SecondaryPatternWitness{w, x, y, z, i, j};
              }
            }
          }
        }
      }
    }
  }
  return std::nullopt;
}

bool out_of_main_pattern(const PreferenceProfile& p) {
  return !find_main_pattern(p).has_value();
}

bool out_of_secondary_pattern(const PreferenceProfile& p) {
  return !find_secondary_pattern(p).has_value();
}

bool out_of_pattern(const PreferenceProfile& p) {
  return out_of_main_pattern(p) && out_of_secondary_pattern(p);
}

}  // namespace seqdyn
