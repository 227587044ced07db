#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>

#include "seqdyn/error.hpp"
#include "seqdyn/preferences.hpp"

namespace seqdyn {

namespace {

void require_strict_weak_orders(const PreferenceProfile& p) {
  for (PlayerIndex i = 0; i < p.player_count(); ++i) {
    if (!is_strict_weak_order(p.of(i))) {
      throw PreconditionError("layering needs strict weak orders; player " +
                              p.players[i] + " is not one");
    }
  }
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

bool some_player_prefers(const PreferenceProfile& p, OutcomeIndex worse,
                         OutcomeIndex better) {
  for (const auto& r : p.relations) {
    if (r.prefers(worse, better)) return true;
  }
  return false;
}

}  // namespace

bool is_valid_layering(const PreferenceProfile& p, const LayerPartition& l) {
  const std::size_t n = p.outcome_count();
  std::vector<std::size_t> layer_of(n, n);
  for (std::size_t k = 0; k < l.layers.size(); ++k) {
    if (l.layers[k].empty()) return false;
    for (OutcomeIndex o : l.layers[k]) {
      if (o >= n || layer_of[o] != n) return false;
      layer_of[o] = k;
    }
  }
  if (std::find(layer_of.begin(), layer_of.end(), n) != layer_of.end()) {
    return false;
  }

  // Higher layers are weakly preferred by everyone.
  for (OutcomeIndex lo = 0; lo < n; ++lo) {
    for (OutcomeIndex hi = 0; hi < n; ++hi) {
      if (layer_of[lo] < layer_of[hi] && some_player_prefers(p, hi, lo)) {
        return false;
      }
    }
  }

  // Inside a layer, no pair of players both agrees on some pair and disagrees
  // on another.
  const std::size_t m = p.player_count();
  for (const auto& layer : l.layers) {
    for (PlayerIndex i = 0; i < m; ++i) {
      for (PlayerIndex j = 0; j < m; ++j) {
        bool agree = false;
        bool disagree = false;
        for (OutcomeIndex a : layer) {
          for (OutcomeIndex b : layer) {
            if (p.of(i).prefers(a, b)) {
              if (p.of(j).prefers(a, b)) agree = true;
              if (p.of(j).prefers(b, a)) disagree = true;
            }
          }
        }
        if (agree && disagree) return false;
      }
    }
  }
  return true;
}

std::optional<LayerPartition> layer_partition(const PreferenceProfile& p) {
  require_strict_weak_orders(p);
  const std::size_t n = p.outcome_count();
  DisjointSets blocks(n);

  // Outcomes some player ranks one way and another player the other way can
  // only share a layer.
  for (OutcomeIndex x = 0; x < n; ++x) {
    for (OutcomeIndex y = x + 1; y < n; ++y) {
      if (some_player_prefers(p, x, y) && some_player_prefers(p, y, x)) {
        blocks.unite(x, y);
      }
    }
  }

  // Blocks on a common cycle of the block digraph must merge as well; repeat
  // until the condensation is stable.
  for (bool merged = true; merged;) {
    merged = false;
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (OutcomeIndex x = 0; x < n; ++x) {
      for (OutcomeIndex y = 0; y < n; ++y) {
        if (some_player_prefers(p, x, y)) {
          reach[blocks.find(x)][blocks.find(y)] = true;
        }
      }
    }
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t a = 0; a < n; ++a) {
        if (!reach[a][k]) continue;
        for (std::size_t b = 0; b < n; ++b) {
          if (reach[k][b]) reach[a][b] = true;
        }
      }
    }
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        if (blocks.find(a) == a && blocks.find(b) == b && reach[a][b] &&
            reach[b][a]) {
          merged |= blocks.unite(a, b);
        }
      }
    }
  }

  // Representatives are the smallest member of each block, so ordering ready
  // blocks by representative breaks ties by smallest label.
  std::vector<std::vector<OutcomeIndex>> members(n);
  for (OutcomeIndex o = 0; o < n; ++o) members[blocks.find(o)].push_back(o);
  std::vector<std::vector<bool>> edge(n, std::vector<bool>(n, false));
  std::vector<std::size_t> indegree(n, 0);
  for (OutcomeIndex x = 0; x < n; ++x) {
    for (OutcomeIndex y = 0; y < n; ++y) {
      const std::size_t a = blocks.find(x);
      const std::size_t b = blocks.find(y);
      if (a != b && !edge[a][b] && some_player_prefers(p, x, y)) {
        edge[a][b] = true;
        ++indegree[b];
      }
    }
  }
  std::priority_queue<std::size_t, std::vector<std::size_t>,
                      std::greater<std::size_t>>
      ready;
  for (std::size_t b = 0; b < n; ++b) {
    if (!members[b].empty() && indegree[b] == 0) ready.push(b);
  }
  LayerPartition result;
  while (!ready.empty()) {
    const std::size_t a = ready.top();
    ready.pop();
    result.layers.push_back(members[a]);
    for (std::size_t b = 0; b < n; ++b) {
      if (edge[a][b] && --indegree[b] == 0) ready.push(b);
    }
  }

  if (!is_valid_layering(p, result)) return std::nullopt;
  return result;
}

// ---------------------------------------------------------------------------

namespace {

// Literal quadruple form of the intra-layer condition.
bool layer_free_of_conflict(const PreferenceProfile& p,
                            const std::vector<OutcomeIndex>& layer) {
  const std::size_t m = p.player_count();
  for (PlayerIndex i = 0; i < m; ++i) {
    const auto& ri = p.of(i);
    for (PlayerIndex j = 0; j < m; ++j) {
      const auto& rj = p.of(j);
      for (OutcomeIndex w : layer) {
        for (OutcomeIndex x : layer) {
          for (OutcomeIndex y : layer) {
            if (!(ri.prefers(x, y) && rj.prefers(x, y))) continue;
            for (OutcomeIndex z : layer) {
              if (ri.prefers(w, z) && rj.prefers(z, w)) return false;
            }
          }
        }
      }
    }
  }
  return true;
}

bool layers_ordered(const PreferenceProfile& p,
                    const std::vector<std::vector<OutcomeIndex>>& blocks,
                    const std::vector<std::size_t>& order) {
  for (std::size_t lo = 0; lo < order.size(); ++lo) {
    for (std::size_t hi = lo + 1; hi < order.size(); ++hi) {
      for (OutcomeIndex x : blocks[order[lo]]) {
        for (OutcomeIndex y : blocks[order[hi]]) {
          for (const auto& r : p.relations) {
            if (!r.weakly_below(x, y)) return false;
          }
        }
      }
    }
  }
  return true;
}

}  // namespace

bool is_layerable_oracle(const PreferenceProfile& p) {
  const std::size_t n = p.outcome_count();
  if (n > kOracleMaxOutcomes) {
    throw CapExceeded("layerability oracle supports at most " +
                      std::to_string(kOracleMaxOutcomes) + " outcomes");
  }
  if (n == 0) return true;

  // Set partitions as restricted growth strings; each admissible one is then
  // tried in every block order.
  std::vector<std::size_t> block_of(n, 0);
  std::function<bool(OutcomeIndex, std::size_t)> assign =
      [&](OutcomeIndex o, std::size_t used) -> bool {
    if (o == n) {
      std::vector<std::vector<OutcomeIndex>> blocks(used);
      for (OutcomeIndex v = 0; v < n; ++v) blocks[block_of[v]].push_back(v);
      for (const auto& b : blocks) {
        if (!layer_free_of_conflict(p, b)) return false;
      }
      std::vector<std::size_t> order(used);
      std::iota(order.begin(), order.end(), std::size_t{0});
      do {
        if (layers_ordered(p, blocks, order)) return true;
      } while (std::next_permutation(order.begin(), order.end()));
      return false;
    }
    for (std::size_t b = 0; b <= used; ++b) {
      block_of[o] = b;
      if (assign(o + 1, std::max(used, b + 1))) return true;
    }
    return false;
  };
  return assign(0, 0);
}

// ---------------------------------------------------------------------------

std::vector<std::vector<OutcomeIndex>> linear_extensions(
    const PreferenceRelation& r) {
  if (!is_acyclic(r)) {
    throw PreconditionError("linear extensions need an acyclic relation");
  }
  const std::size_t n = r.size();
  std::vector<std::vector<OutcomeIndex>> out;
  std::vector<OutcomeIndex> prefix;
  std::vector<bool> placed(n, false);
  std::function<void()> extend = [&]() {
    if (prefix.size() == n) {
      out.push_back(prefix);
      return;
    }
    for (OutcomeIndex v = 0; v < n; ++v) {
      if (placed[v]) continue;
      bool minimal = true;
      for (OutcomeIndex u = 0; u < n && minimal; ++u) {
        if (!placed[u] && r.prefers(u, v)) minimal = false;
      }
      if (!minimal) continue;
      placed[v] = true;
      prefix.push_back(v);
      extend();
      prefix.pop_back();
      placed[v] = false;
    }
  };
  extend();
  return out;
}

PreferenceRelation linear_order_from_sequence(
    std::size_t outcome_count, const std::vector<OutcomeIndex>& sequence) {
  PreferenceRelation r(outcome_count);
  for (std::size_t a = 0; a < sequence.size(); ++a) {
    for (std::size_t b = a + 1; b < sequence.size(); ++b) {
      r.add(sequence[a], sequence[b]);
    }
  }
  return r;
}

std::optional<std::pair<PreferenceRelation, PreferenceRelation>>
layerable_linear_extension(const PreferenceProfile& p) {
  if (p.player_count() != 2) {
    throw PreconditionError("linear extension search needs exactly 2 players");
  }
  require_strict_weak_orders(p);
  const std::size_t n = p.outcome_count();
  if (n > kExtensionMaxOutcomes) {
    throw CapExceeded("linear extension search supports at most " +
                      std::to_string(kExtensionMaxOutcomes) + " outcomes");
  }

  std::vector<PreferenceRelation> first;
  for (const auto& seq : linear_extensions(p.of(0))) {
    first.push_back(linear_order_from_sequence(n, seq));
  }
  std::vector<PreferenceRelation> second;
  for (const auto& seq : linear_extensions(p.of(1))) {
    second.push_back(linear_order_from_sequence(n, seq));
  }

  PreferenceProfile candidate = p;
  for (const auto& a : first) {
    candidate.relations[0] = a;
    for (const auto& b : second) {
      candidate.relations[1] = b;
      if (layer_partition(candidate)) return std::make_pair(a, b);
    }
  }
  return std::nullopt;
}

}  // namespace seqdyn
