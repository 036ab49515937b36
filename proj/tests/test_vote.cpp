#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

#include "phishvote/rng.hpp"
#include "phishvote/vote.hpp"

using namespace phishvote;

namespace {

constexpr VoteValue P = VoteValue::Phishing;
constexpr VoteValue L = VoteValue::Legitimate;
constexpr VoteValue A = VoteValue::Abstain;

std::vector<Vote> make_votes(std::initializer_list<VoteValue> values) {
  std::vector<Vote> votes;
  for (VoteValue v : values) votes.push_back(Vote{v, {}});
  return votes;
}

// Independent reference: filter abstentions, count, apply the policy table.
// Deliberately written against the documented semantics, not the library path.
std::optional<Label> reference_majority(const std::vector<VoteValue>& values,
                                        const TieBreakPolicy& policy) {
  std::vector<Label> valid;
  for (VoteValue v : values) {
    if (v == P) valid.push_back(Label::Phishing);
    if (v == L) valid.push_back(Label::Legitimate);
  }
  if (valid.empty()) return std::nullopt;
  std::size_t ph = 0;
  for (Label l : valid) ph += (l == Label::Phishing) ? 1 : 0;
  const std::size_t lg = valid.size() - ph;
  if (ph > lg) return Label::Phishing;
  if (lg > ph) return Label::Legitimate;
  switch (policy.kind) {
    case TieBreakPolicy::Kind::FailSafePhishing: return Label::Phishing;
    case TieBreakPolicy::Kind::FailOpenLegitimate: return Label::Legitimate;
    case TieBreakPolicy::Kind::FirstListedComponent: return valid.front();
    case TieBreakPolicy::Kind::SeededRandom: {
      // Frozen coin contract: one splitmix draw from the seed mixed with the
      // valid-vote counts, low bit picks phishing.
      const std::uint64_t h =
          mix64(policy.seed, mix64(ph, static_cast<std::uint64_t>(lg) << 21));
      return (h & 1) ? Label::Phishing : Label::Legitimate;
    }
  }
  return std::nullopt;
}

const TieBreakPolicy kAllPolicies[] = {
    TieBreakPolicy::fail_safe_phishing(),
    TieBreakPolicy::fail_open_legitimate(),
    TieBreakPolicy::seeded_random(42),
    TieBreakPolicy::first_listed_component(),
};

// Every vote sequence over {P, L, A} of the given length, lexicographic order.
void for_each_sequence(std::size_t length,
                       const std::function<void(const std::vector<VoteValue>&)>& fn) {
  std::vector<VoteValue> seq(length, P);
  std::vector<std::size_t> digits(length, 0);
  const VoteValue alphabet[] = {P, L, A};
  for (;;) {
    for (std::size_t i = 0; i < length; ++i) seq[i] = alphabet[digits[i]];
    fn(seq);
    std::size_t i = 0;
    while (i < length && digits[i] == 2) digits[i++] = 0;
    if (i == length) break;
    ++digits[i];
  }
}

}  // namespace

TEST_CASE("tally counts partition the input") {
  CHECK(tally(make_votes({P, P, L})) == Tally{2, 1, 0});
  CHECK(tally(make_votes({})) == Tally{0, 0, 0});
  CHECK(tally(make_votes({A, A, P})) == Tally{1, 0, 2});
}

TEST_CASE("tally is order independent") {
  SplitMix64 rng(7);
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<Vote> votes;
    const std::size_t n = rng.next_below(12);
    for (std::size_t i = 0; i < n; ++i) {
      const VoteValue alphabet[] = {P, L, A};
      votes.push_back(Vote{alphabet[rng.next_below(3)], {}});
    }
    auto shuffled = votes;
    seeded_shuffle(shuffled, rng);
    CHECK(tally(votes) == tally(shuffled));
  }
}

TEST_CASE("majority_vote spec examples") {
  CHECK(majority_vote(make_votes({P, P, L}), TieBreakPolicy::fail_safe_phishing()) ==
        Label::Phishing);
  CHECK(majority_vote(make_votes({P, P, L}), TieBreakPolicy::fail_open_legitimate()) ==
        Label::Phishing);
  CHECK(majority_vote(make_votes({P, L}), TieBreakPolicy::fail_safe_phishing()) ==
        Label::Phishing);
  CHECK(majority_vote(make_votes({A, L, A}), TieBreakPolicy::fail_safe_phishing()) ==
        Label::Legitimate);
  CHECK(majority_vote(make_votes({A, A}), TieBreakPolicy::fail_safe_phishing()) ==
        std::nullopt);
  CHECK(majority_vote(make_votes({}), TieBreakPolicy::fail_safe_phishing()) ==
        std::nullopt);
}

TEST_CASE("first listed component resolves ties by earliest valid vote") {
  CHECK(majority_vote(make_votes({A, L, P}), TieBreakPolicy::first_listed_component()) ==
        Label::Legitimate);
  CHECK(majority_vote(make_votes({P, L}), TieBreakPolicy::first_listed_component()) ==
        Label::Phishing);
}

TEST_CASE("exhaustive oracle over all sequences up to length 7") {
  for (std::size_t len = 0; len <= 7; ++len) {
    for_each_sequence(len, [&](const std::vector<VoteValue>& seq) {
      auto votes = make_votes({});
      for (VoteValue v : seq) votes.push_back(Vote{v, {}});
      for (const TieBreakPolicy& policy : kAllPolicies) {
        const auto got = majority_vote(votes, policy);
        const auto want = reference_majority(seq, policy);
        REQUIRE(got == want);
      }
    });
  }
}

TEST_CASE("permutation invariance for all policies except first-listed") {
  SplitMix64 rng(99);
  const TieBreakPolicy policies[] = {
      TieBreakPolicy::fail_safe_phishing(),
      TieBreakPolicy::fail_open_legitimate(),
      TieBreakPolicy::seeded_random(17),
  };
  for (int iter = 0; iter < 500; ++iter) {
    std::vector<Vote> votes;
    const std::size_t n = 1 + rng.next_below(9);
    for (std::size_t i = 0; i < n; ++i) {
      const VoteValue alphabet[] = {P, L, A};
      votes.push_back(Vote{alphabet[rng.next_below(3)], {}});
    }
    auto shuffled = votes;
    seeded_shuffle(shuffled, rng);
    for (const TieBreakPolicy& policy : policies) {
      CHECK(majority_vote(votes, policy) == majority_vote(shuffled, policy));
    }
  }
}

TEST_CASE("monotonicity: adding a phishing vote never flips phishing to legitimate") {
  SplitMix64 rng(123);
  for (int iter = 0; iter < 500; ++iter) {
    std::vector<Vote> votes;
    const std::size_t n = rng.next_below(8);
    for (std::size_t i = 0; i < n; ++i) {
      const VoteValue alphabet[] = {P, L, A};
      votes.push_back(Vote{alphabet[rng.next_below(3)], {}});
    }
    for (const TieBreakPolicy& policy : kAllPolicies) {
      const auto before = majority_vote(votes, policy);
      auto extended = votes;
      extended.push_back(Vote{P, {}});
      const auto after = majority_vote(extended, policy);
      if (before == Label::Phishing) CHECK(after == Label::Phishing);
    }
  }
}

TEST_CASE("abstain neutrality") {
  SplitMix64 rng(321);
  for (int iter = 0; iter < 500; ++iter) {
    std::vector<Vote> votes;
    const std::size_t n = 1 + rng.next_below(7);
    for (std::size_t i = 0; i < n; ++i) {
      votes.push_back(Vote{rng.next_below(2) ? P : L, {}});
    }
    for (const TieBreakPolicy& policy : kAllPolicies) {
      const auto before = majority_vote(votes, policy);
      auto padded = votes;
      const std::size_t extra = 1 + rng.next_below(4);
      for (std::size_t i = 0; i < extra; ++i) padded.push_back(Vote{A, {}});
      CHECK(majority_vote(padded, policy) == before);
      CHECK(majority_vote(padded, policy).has_value());
    }
  }
}

TEST_CASE("seeded random ties are deterministic and multiset-stable") {
  const auto votes = make_votes({P, L, P, L});
  const auto policy = TieBreakPolicy::seeded_random(1234);
  const auto first = majority_vote(votes, policy);
  for (int i = 0; i < 10; ++i) CHECK(majority_vote(votes, policy) == first);

  auto reordered = make_votes({L, P, L, P});
  CHECK(majority_vote(reordered, policy) == first);

  // Both outcomes are reachable across seeds.
  bool saw_phishing = false, saw_legitimate = false;
  for (std::uint64_t seed = 0; seed < 64; ++seed) {
    const auto verdict =
        majority_vote(votes, TieBreakPolicy::seeded_random(seed));
    saw_phishing |= (verdict == Label::Phishing);
    saw_legitimate |= (verdict == Label::Legitimate);
  }
  CHECK(saw_phishing);
  CHECK(saw_legitimate);
}
