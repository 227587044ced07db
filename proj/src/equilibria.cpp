#include "seqdyn/equilibria.hpp"

#include <algorithm>
#include <limits>

#include "seqdyn/error.hpp"

namespace seqdyn {

namespace {

// Calls `visit(profile)` for every assignment of legal actions to `slots`,
// all other entries fixed to `base`. Stops early when `visit` returns true.
template <typename Visit>
bool any_assignment(const Game& g, const StrategyProfile& base,
                    const std::vector<std::size_t>& slots, Visit visit) {
  StrategyProfile s = base;
  for (std::size_t slot : slots) s.choice[slot] = 0;
  while (true) {
    if (visit(s)) return true;
    std::size_t k = slots.size();
    while (k > 0) {
      const std::size_t slot = slots[k - 1];
      if (++s.choice[slot] < g.node(g.decision_node(slot)).moves.size()) break;
      s.choice[slot] = 0;
      --k;
    }
    if (k == 0) return false;
  }
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  return (b != 0 && a > kMax / b) ? kMax : a * b;
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  return a > kMax - b ? kMax : a + b;
}

constexpr std::size_t kMaxCoalitionPlayers = 20;

}  // namespace

NashCheck is_nash(const Game& g, const StrategyProfile& s) {
  validate_profile(g, s);
  const OutcomeIndex current = outcome_of(g, s);
  for (PlayerIndex i = 0; i < g.players().size(); ++i) {
    const auto& pref = g.preferences().of(i);
    NashCheck result;
    if (any_assignment(g, s, g.slots_of(i), [&](const StrategyProfile& dev) {
          if (!pref.prefers(current, outcome_of(g, dev))) return false;
          result = NashCheck{false, Deviation{i, dev}};
          return true;
        })) {
      return result;
    }
  }
  return {};
}

SpeCheck is_spe(const Game& g, const StrategyProfile& s) {
  validate_profile(g, s);
  for (NodeIndex h : g.decision_nodes()) {
    const OutcomeIndex current = outcome_from(g, s, h);
    for (PlayerIndex i = 0; i < g.players().size(); ++i) {
      std::vector<std::size_t> slots;
      for (std::size_t slot : g.slots_of(i)) {
        if (g.in_subtree(g.decision_node(slot), h)) slots.push_back(slot);
      }
      const auto& pref = g.preferences().of(i);
      SpeCheck result;
      if (any_assignment(g, s, slots, [&](const StrategyProfile& dev) {
            if (!pref.prefers(current, outcome_from(g, dev, h))) return false;
            result = SpeCheck{false, SubgameDeviation{h, Deviation{i, dev}}};
            return true;
          })) {
        return result;
      }
    }
  }
  return {};
}

std::uint64_t coalition_deviation_count(const Game& g) {
  const std::size_t n = g.players().size();
  if (n > kMaxCoalitionPlayers) return std::numeric_limits<std::uint64_t>::max();
  std::vector<std::uint64_t> per_player(n, 1);
  for (PlayerIndex i = 0; i < n; ++i) {
    for (std::size_t slot : g.slots_of(i)) {
      per_player[i] = saturating_mul(
          per_player[i], g.node(g.decision_node(slot)).moves.size());
    }
  }
  std::uint64_t total = 0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    std::uint64_t joint = 1;
    for (PlayerIndex i = 0; i < n; ++i) {
      if (mask & (std::uint64_t{1} << i)) {
        joint = saturating_mul(joint, per_player[i]);
      }
    }
    total = saturating_add(total, joint);
  }
  return total;
}

SneCheck is_sne(const Game& g, const StrategyProfile& s, std::uint64_t cap) {
  validate_profile(g, s);
  const std::size_t n = g.players().size();
  if (coalition_deviation_count(g) > cap) {
    throw CapExceeded("coalition deviations exceed the cap of " +
                      std::to_string(cap));
  }
  const OutcomeIndex current = outcome_of(g, s);
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<PlayerIndex> members;
    std::vector<std::size_t> slots;
    for (PlayerIndex i = 0; i < n; ++i) {
      if (!(mask & (std::uint64_t{1} << i))) continue;
      members.push_back(i);
      for (std::size_t slot : g.slots_of(i)) slots.push_back(slot);
    }
    std::sort(slots.begin(), slots.end());
    SneCheck result;
    if (any_assignment(g, s, slots, [&](const StrategyProfile& dev) {
          const OutcomeIndex after = outcome_of(g, dev);
          for (PlayerIndex i : members) {
            if (!g.preferences().of(i).prefers(current, after)) return false;
          }
          result = SneCheck{false, CoalitionDeviation{members, dev}};
          return true;
        })) {
      return result;
    }
  }
  return {};
}

EquilibriumSets equilibrium_sets(const Game& g, std::uint64_t cap) {
  EquilibriumSets sets;
  for (const auto& s : enumerate_profiles(g, cap)) {
    if (is_nash(g, s).holds) sets.ne.push_back(s);
    if (is_spe(g, s).holds) sets.spe.push_back(s);
    if (is_sne(g, s, cap).holds) sets.sne.push_back(s);
  }
  return sets;
}

}  // namespace seqdyn
