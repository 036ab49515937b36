#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace phishvote {

/// Base class for everything this library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Final classification of a URL. Exactly two values exist; abstention is a
/// component-level concept (see VoteValue) and never a verdict.
enum class Label : std::uint8_t { Phishing, Legitimate };

enum class PromptKind : std::uint8_t { ZeroShot, OneShot, TwoShot };

inline constexpr PromptKind kAllPromptKinds[] = {
    PromptKind::ZeroShot, PromptKind::OneShot, PromptKind::TwoShot};

std::string_view to_word(Label label);
std::string_view to_word(PromptKind kind);

/// Case-insensitive parse of "phishing" / "legitimate".
std::optional<Label> label_from_word(std::string_view word);

/// Accepts "zero_shot" / "one_shot" / "two_shot" (also with '-').
std::optional<PromptKind> prompt_kind_from_word(std::string_view word);

inline Label opposite(Label label) {
  return label == Label::Phishing ? Label::Legitimate : Label::Phishing;
}

/// One voter inside an ensemble run: a (model, prompt) pair.
struct ComponentId {
  std::string model;
  PromptKind prompt = PromptKind::ZeroShot;

  bool operator==(const ComponentId&) const = default;
  auto operator<=>(const ComponentId&) const = default;
};

/// Display form "model/prompt"; model names may not contain '/' or ','.
std::string to_string(const ComponentId& id);

}  // namespace phishvote
