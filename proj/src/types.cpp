#include "phishvote/types.hpp"

#include <algorithm>
#include <cctype>

namespace phishvote {

namespace {

std::string lowercase(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

}  // namespace

std::string_view to_word(Label label) {
  return label == Label::Phishing ? "phishing" : "legitimate";
}

std::string_view to_word(PromptKind kind) {
  switch (kind) {
    case PromptKind::ZeroShot: return "zero_shot";
    case PromptKind::OneShot: return "one_shot";
    case PromptKind::TwoShot: return "two_shot";
  }
  return "zero_shot";
}

std::optional<Label> label_from_word(std::string_view word) {
  const std::string w = lowercase(word);
  if (w == "phishing") return Label::Phishing;
  if (w == "legitimate") return Label::Legitimate;
  return std::nullopt;
}

std::optional<PromptKind> prompt_kind_from_word(std::string_view word) {
  std::string w = lowercase(word);
  std::replace(w.begin(), w.end(), '-', '_');
  if (w == "zero_shot") return PromptKind::ZeroShot;
  if (w == "one_shot") return PromptKind::OneShot;
  if (w == "two_shot") return PromptKind::TwoShot;
  return std::nullopt;
}

std::string to_string(const ComponentId& id) {
  std::string out = id.model;
  out += '/';
  out += to_word(id.prompt);
  return out;
}

}  // namespace phishvote
