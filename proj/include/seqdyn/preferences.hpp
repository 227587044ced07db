#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace seqdyn {

using OutcomeIndex = std::size_t;
using PlayerIndex = std::size_t;

// A raw binary relation over outcome indices 0..n-1. `prefers(x, y)` reads
// "x is strictly worse than y" (x ≺ y). Nothing about the relation is
// assumed: it may be reflexive, intransitive or cyclic. The classifiers below
// decide which of those it is.
class PreferenceRelation {
 public:
  PreferenceRelation() = default;
  explicit PreferenceRelation(std::size_t outcome_count);

  static PreferenceRelation from_pairs(
      std::size_t outcome_count,
      const std::vector<std::pair<OutcomeIndex, OutcomeIndex>>& pairs);

  // Indifference classes from least to most preferred; x ≺ y iff x's class
  // comes strictly before y's. Outcomes not listed stay unrelated.
  static PreferenceRelation from_ranking(
      std::size_t outcome_count,
      const std::vector<std::vector<OutcomeIndex>>& ranking);

  std::size_t size() const { return size_; }

  bool prefers(OutcomeIndex worse, OutcomeIndex better) const {
    return bits_[worse * size_ + better] != 0;
  }
  void add(OutcomeIndex worse, OutcomeIndex better) {
    bits_[worse * size_ + better] = 1;
  }
  void remove(OutcomeIndex worse, OutcomeIndex better) {
    bits_[worse * size_ + better] = 0;
  }

  // x ∼ y: distinct and related in neither direction.
  bool indifferent(OutcomeIndex x, OutcomeIndex y) const {
    return x != y && !prefers(x, y) && !prefers(y, x);
  }
  // x ≲ y, read as ¬(y ≺ x).
  bool weakly_below(OutcomeIndex x, OutcomeIndex y) const {
    return !prefers(y, x);
  }

  // All pairs (x, y) with x ≺ y, in row-major order.
  std::vector<std::pair<OutcomeIndex, OutcomeIndex>> pairs() const;

  friend bool operator==(const PreferenceRelation&,
                         const PreferenceRelation&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint8_t> bits_;
};

// One relation per player over a shared, label-sorted outcome set.
struct PreferenceProfile {
  std::vector<std::string> outcomes;
  std::vector<std::string> players;
  std::vector<PreferenceRelation> relations;

  std::size_t outcome_count() const { return outcomes.size(); }
  std::size_t player_count() const { return players.size(); }
  const PreferenceRelation& of(PlayerIndex p) const { return relations[p]; }

  std::optional<OutcomeIndex> find_outcome(const std::string& label) const;
  std::optional<PlayerIndex> find_player(const std::string& id) const;

  friend bool operator==(const PreferenceProfile&,
                         const PreferenceProfile&) = default;
};

// Ordering used for player ids: digit strings compare numerically, everything
// else lexicographically, digit strings first.
bool player_id_less(const std::string& a, const std::string& b);

// Builds a profile with label-sorted outcomes and player-sorted players and
// empty relations.
PreferenceProfile make_profile(std::vector<std::string> outcomes,
                               std::vector<std::string> players);

// ---------------------------------------------------------------------------
// Classification.

bool is_acyclic(const PreferenceRelation& r);
bool is_strict_weak_order(const PreferenceRelation& r);
bool is_strict_linear_order(const PreferenceRelation& r);

// Some directed cycle of the relation, or nullopt when acyclic.
std::optional<std::vector<OutcomeIndex>> find_preference_cycle(
    const PreferenceRelation& r);

// ---------------------------------------------------------------------------
// Forbidden patterns.

// x ≺_i y ≺_i z together with y ≺_j z ≺_j x.
struct MainPatternWitness {
  OutcomeIndex x, y, z;
  PlayerIndex i, j;
  friend bool operator==(const MainPatternWitness&,
                         const MainPatternWitness&) = default;
};

// w ≺_i x ≺_i y ≺_i z together with x ∼_j z ≺_j w ∼_j y.
struct SecondaryPatternWitness {
  OutcomeIndex w, x, y, z;
  PlayerIndex i, j;
  friend bool operator==(const SecondaryPatternWitness&,
                         const SecondaryPatternWitness&) = default;
};

// First witness in lexicographic (outcome tuple, player pair) order.
std::optional<MainPatternWitness> find_main_pattern(const PreferenceProfile& p);
std::optional<SecondaryPatternWitness> find_secondary_pattern(
    const PreferenceProfile& p);

bool out_of_main_pattern(const PreferenceProfile& p);
bool out_of_secondary_pattern(const PreferenceProfile& p);
bool out_of_pattern(const PreferenceProfile& p);

// ---------------------------------------------------------------------------
// Layers.

// Ordered partition of the outcome set, least-preferred layer first.
struct LayerPartition {
  std::vector<std::vector<OutcomeIndex>> layers;
  friend bool operator==(const LayerPartition&,
                         const LayerPartition&) = default;
};

// Checks both layering conditions: layers are unanimously weakly ordered, and
// no two players agree on one pair of a layer while disagreeing on another.
bool is_valid_layering(const PreferenceProfile& p, const LayerPartition& l);

// Finest layering, or nullopt when none exists. Every relation must be a
// strict weak order (PreconditionError otherwise).
std::optional<LayerPartition> layer_partition(const PreferenceProfile& p);

// Exhaustive search over ordered set partitions. Independent of
// layer_partition; used to cross-check it.
inline constexpr std::size_t kOracleMaxOutcomes = 8;
bool is_layerable_oracle(const PreferenceProfile& p);

// For two players with strict weak orders: strict linear extensions of both
// relations whose profile can be layered, or nullopt if no such pair exists.
inline constexpr std::size_t kExtensionMaxOutcomes = 8;
std::optional<std::pair<PreferenceRelation, PreferenceRelation>>
layerable_linear_extension(const PreferenceProfile& p);

// Every strict linear extension of `r` (which must be acyclic), each given as
// the outcome sequence from least to most preferred.
std::vector<std::vector<OutcomeIndex>> linear_extensions(
    const PreferenceRelation& r);

PreferenceRelation linear_order_from_sequence(
    std::size_t outcome_count, const std::vector<OutcomeIndex>& sequence);

}  // namespace seqdyn
