#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "seqdyn/game.hpp"
#include "seqdyn/json_io.hpp"
#include "seqdyn/preferences.hpp"

namespace seqdyn {

// arbitrary    each ordered pair of distinct outcomes with probability 1/3
// acyclic      random subset of the pairs consistent with a random permutation
// swo          random ordered partition of the outcomes
// slo          random permutation
// layered-swo  random layers; inside a layer each player follows a shared
//              ranking, its reverse, or is indifferent
// cyclic       acyclic plus one reversed pair
enum class PrefKind { kArbitrary, kAcyclic, kSwo, kSlo, kLayeredSwo, kCyclic };

std::string to_string(PrefKind k);
std::optional<PrefKind> parse_pref_kind(const std::string& text);

// Player and outcome counts are drawn uniformly from [min, num]. Players are
// named "1", "2", ...; outcomes "a", "b", ...
struct GenParams {
  std::uint64_t seed = 0;
  std::size_t max_depth = 4;
  std::size_t max_branching = 3;
  std::size_t num_players = 3;
  std::size_t num_outcomes = 5;
  std::size_t min_players = 1;
  std::size_t min_outcomes = 1;
  PrefKind pref_kind = PrefKind::kAcyclic;
  std::uint64_t max_profiles = 256;
  std::size_t max_nodes = 0;  // 0 = unbounded

  Json to_json() const;
};

// Throws PreconditionError on inconsistent bounds.
void validate(const GenParams& p);

PreferenceProfile gen_preferences(const GenParams& p);
Game gen_game(const GenParams& p);
// A random tree over the players and outcomes of `prefs`.
Game gen_game_over(const GenParams& p, const PreferenceProfile& prefs);

// ---------------------------------------------------------------------------
// Claims.

enum class Claim {
  kThm1,
  kProp1,
  kProp2,
  kProp3,
  kLemma1,
  kLemma2,
  kPropEquivIA,
  kCorIATerminates,
  kPropNEIATerminal,
  kPropCyclicPlayers,
  kThmSWO,
  kCorEquiv,
  kPropPatternLayer,
  kProp2pExtension,
};

struct ClaimInfo {
  Claim claim;
  std::string id;
  std::string statement;
  GenParams defaults;
  std::size_t default_trials;
};

const std::vector<ClaimInfo>& all_claims();
const ClaimInfo& claim_info(Claim c);
// Throws InputError for unknown ids.
Claim parse_claim(const std::string& id);

struct Failure {
  std::optional<std::uint64_t> seed;
  std::string fixture;  // set instead of `seed` for fixture instances
  std::string variant;
  Json instance;
  std::string counterexample;
};

struct ClaimReport {
  std::string claim;
  GenParams params;
  std::size_t trials = 0;
  std::size_t instances = 0;
  std::size_t checked = 0;  // instances within the claim's hypothesis
  std::size_t failed = 0;
  std::vector<Failure> failures;  // the first kMaxReportedFailures

  bool passed() const { return failed == 0; }
  Json to_json() const;
};

inline constexpr std::size_t kMaxReportedFailures = 5;

// Trial t draws its instances from seed p.seed + t. Fixture instances are
// checked once per call.
ClaimReport verify(Claim claim, const GenParams& p, std::size_t trials);

}  // namespace seqdyn
