#include "phishvote/vote.hpp"

#include <algorithm>

#include "phishvote/rng.hpp"

namespace phishvote {

std::string_view to_word(VoteValue value) {
  switch (value) {
    case VoteValue::Phishing: return "phishing";
    case VoteValue::Legitimate: return "legitimate";
    case VoteValue::Abstain: return "abstain";
  }
  return "abstain";
}

std::optional<VoteValue> vote_value_from_word(std::string_view word) {
  if (word == "abstain") return VoteValue::Abstain;
  if (const auto label = label_from_word(word)) return to_vote_value(*label);
  return std::nullopt;
}

std::string to_string(const TieBreakPolicy& policy) {
  switch (policy.kind) {
    case TieBreakPolicy::Kind::FailSafePhishing: return "fail_safe_phishing";
    case TieBreakPolicy::Kind::FailOpenLegitimate: return "fail_open_legitimate";
    case TieBreakPolicy::Kind::SeededRandom:
      return "seeded_random:" + std::to_string(policy.seed);
    case TieBreakPolicy::Kind::FirstListedComponent: return "first_listed_component";
  }
  return "fail_safe_phishing";
}

Tally tally(std::span<const Vote> votes) {
  Tally t;
  for (const Vote& v : votes) {
    switch (v.value) {
      case VoteValue::Phishing: ++t.phishing; break;
      case VoteValue::Legitimate: ++t.legitimate; break;
      case VoteValue::Abstain: ++t.abstain; break;
    }
  }
  return t;
}

Label tie_coin(std::uint64_t seed, const Tally& counts) {
  // Keyed on the valid-vote counts only: padding abstentions onto a multiset
  // must not reroll the coin.
  const std::uint64_t h =
      mix64(seed, mix64(counts.phishing, counts.legitimate << 21));
  return (h & 1) ? Label::Phishing : Label::Legitimate;
}

namespace {

std::optional<Label> resolve(const Tally& t, const TieBreakPolicy& policy,
                             std::optional<Label> first_valid) {
  if (t.valid() == 0) return std::nullopt;
  if (t.phishing > t.legitimate) return Label::Phishing;
  if (t.legitimate > t.phishing) return Label::Legitimate;
  switch (policy.kind) {
    case TieBreakPolicy::Kind::FailSafePhishing: return Label::Phishing;
    case TieBreakPolicy::Kind::FailOpenLegitimate: return Label::Legitimate;
    case TieBreakPolicy::Kind::SeededRandom: return tie_coin(policy.seed, t);
    case TieBreakPolicy::Kind::FirstListedComponent: return first_valid;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Label> majority_vote(std::span<const Vote> votes,
                                   const TieBreakPolicy& policy) {
  std::optional<Label> first_valid;
  for (const Vote& v : votes) {
    if (const auto label = label_of(v.value)) {
      first_valid = label;
      break;
    }
  }
  return resolve(tally(votes), policy, first_valid);
}

std::optional<Label> majority_vote(std::span<const VoteValue> values,
                                   const TieBreakPolicy& policy) {
  std::vector<Vote> votes(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) votes[i].value = values[i];
  return majority_vote(std::span<const Vote>(votes), policy);
}

}  // namespace phishvote
