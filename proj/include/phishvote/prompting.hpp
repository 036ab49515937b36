#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "phishvote/dataset.hpp"
#include "phishvote/types.hpp"
#include "phishvote/vote.hpp"

namespace phishvote {

class PromptError : public Error {
 public:
  using Error::Error;
};

class ExemplarMismatchError : public PromptError {
 public:
  using PromptError::PromptError;
};

class TemplateParseError : public PromptError {
 public:
  using PromptError::PromptError;
};

class ExemplarLeakageError : public PromptError {
 public:
  using PromptError::PromptError;
};

struct Exemplar {
  std::string url;
  Label label = Label::Phishing;

  bool operator==(const Exemplar&) const = default;
};

/// A batch classification prompt. Prompt prose lives in template files (data,
/// not code); only the numbered-list structure and the Example/Answer framing
/// are fixed here, because the response grammar depends on them.
struct PromptTemplate {
  PromptKind kind = PromptKind::ZeroShot;
  std::string instruction_text;
  std::vector<Exemplar> exemplars;  // 0 / 1 / 2 per kind
  std::string response_format_clause;
};

struct RenderedPrompt {
  std::string text;
  std::size_t url_count = 0;
  PromptKind prompt = PromptKind::ZeroShot;
};

/// instruction + exemplar block (shaped exactly like the required response
/// lines) + 1-based numbered URL list + format clause. Deterministic for a
/// given (template, batch). Throws ExemplarMismatchError when the exemplar
/// count or labels are inconsistent with the kind, PromptError on an empty
/// batch.
RenderedPrompt render_batch_prompt(const PromptTemplate& tpl, const Batch& batch);

/// Recovers one vote per expected URL from arbitrary model output. Per line,
/// after trimming whitespace and markdown decoration, `<k>. <label-word>`
/// (case-insensitive, trailing punctuation tolerated, `)`/`:` also accepted
/// as the separator) assigns vote k. Indices outside [1, expected_count] are
/// ignored, the first occurrence wins on duplicates, and unassigned indices
/// become Abstain. Never throws; always returns exactly expected_count votes.
std::vector<VoteValue> parse_batch_response(std::string_view text,
                                            std::size_t expected_count);

/// The response a perfectly obedient model would produce: `k. <label>` lines.
std::string format_reference_response(std::span<const Label> labels);

/// The numbered URL list of a rendered prompt: the last run of consecutive
/// `1. ... N.` lines whose payload is not a bare label word (exemplar answer
/// lines break such runs, so the batch list is always the final run).
std::vector<std::string> extract_numbered_urls(std::string_view prompt_text);

/// Parses a template file. Lines `@exemplar <url> <label>` declare exemplars;
/// the remaining body must contain a `{{url_list}}` marker line and, when
/// exemplars exist, a `{{exemplars}}` marker line before it. Text before the
/// first marker is the instruction, text after `{{url_list}}` the response
/// format clause.
PromptTemplate load_template_file(const std::filesystem::path& path, PromptKind kind);

class TemplateRegistry {
 public:
  /// Loads `zero_shot.txt`, `one_shot.txt`, `two_shot.txt` from a directory;
  /// files may be absent as long as nothing requests the missing kind.
  static TemplateRegistry from_directory(const std::filesystem::path& dir);

  void set(PromptTemplate tpl);
  const PromptTemplate& get(PromptKind kind) const;  // throws PromptError if absent
  bool contains(PromptKind kind) const;

 private:
  std::map<PromptKind, PromptTemplate> templates_;
};

/// Rejects any configuration whose exemplar URLs occur in the evaluation
/// dataset (leakage guard, run at setup).
void check_exemplar_leakage(const TemplateRegistry& templates,
                            std::span<const PromptKind> prompts,
                            const Dataset& ds);

}  // namespace phishvote
