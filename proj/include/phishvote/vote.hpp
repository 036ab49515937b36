#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "phishvote/types.hpp"

namespace phishvote {

/// What a single component said about one URL. Abstain records a missing or
/// unparseable answer; it never counts toward either side of a majority.
enum class VoteValue : std::uint8_t { Phishing, Legitimate, Abstain };

inline VoteValue to_vote_value(Label label) {
  return label == Label::Phishing ? VoteValue::Phishing : VoteValue::Legitimate;
}

/// The label a vote carries, or nullopt for Abstain.
inline std::optional<Label> label_of(VoteValue value) {
  switch (value) {
    case VoteValue::Phishing: return Label::Phishing;
    case VoteValue::Legitimate: return Label::Legitimate;
    case VoteValue::Abstain: return std::nullopt;
  }
  return std::nullopt;
}

std::string_view to_word(VoteValue value);
std::optional<VoteValue> vote_value_from_word(std::string_view word);

struct Vote {
  VoteValue value = VoteValue::Abstain;
  ComponentId source;
};

/// Resolution rule for an even split among valid votes.
struct TieBreakPolicy {
  enum class Kind : std::uint8_t {
    FailSafePhishing,      // a 50/50 split blocks
    FailOpenLegitimate,    // a 50/50 split passes
    SeededRandom,          // deterministic coin from (seed, vote multiset)
    FirstListedComponent,  // the earliest valid vote in sequence order wins
  };

  Kind kind = Kind::FailSafePhishing;
  std::uint64_t seed = 0;  // used by SeededRandom only

  static TieBreakPolicy fail_safe_phishing() { return {Kind::FailSafePhishing, 0}; }
  static TieBreakPolicy fail_open_legitimate() { return {Kind::FailOpenLegitimate, 0}; }
  static TieBreakPolicy seeded_random(std::uint64_t seed) { return {Kind::SeededRandom, seed}; }
  static TieBreakPolicy first_listed_component() { return {Kind::FirstListedComponent, 0}; }

  bool operator==(const TieBreakPolicy&) const = default;
};

std::string to_string(const TieBreakPolicy& policy);

struct Tally {
  std::size_t phishing = 0;
  std::size_t legitimate = 0;
  std::size_t abstain = 0;

  std::size_t total() const { return phishing + legitimate + abstain; }
  std::size_t valid() const { return phishing + legitimate; }
  bool operator==(const Tally&) const = default;
};

/// Counts partition the input exactly; order-independent.
Tally tally(std::span<const Vote> votes);

/// Deterministic coin for SeededRandom ties: a pure function of the seed and
/// the vote multiset (its tally), so equal multisets always resolve alike and
/// reordering votes cannot change the outcome.
Label tie_coin(std::uint64_t seed, const Tally& counts);

/// Majority over non-abstain votes; ties resolve per policy. Returns nullopt
/// when every vote is Abstain (or none were supplied) — the caller owns the
/// fallback for that case.
std::optional<Label> majority_vote(std::span<const Vote> votes,
                                   const TieBreakPolicy& policy);

/// Convenience for callers holding bare values rather than sourced votes.
std::optional<Label> majority_vote(std::span<const VoteValue> values,
                                   const TieBreakPolicy& policy);

}  // namespace phishvote
