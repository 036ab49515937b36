#include "phishvote/prompting.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace phishvote {

namespace {

constexpr std::string_view kExemplarsMarker = "{{exemplars}}";
constexpr std::string_view kUrlListMarker = "{{url_list}}";

std::string_view trim_view(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string rtrim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

std::size_t expected_exemplars(PromptKind kind) {
  switch (kind) {
    case PromptKind::ZeroShot: return 0;
    case PromptKind::OneShot: return 1;
    case PromptKind::TwoShot: return 2;
  }
  return 0;
}

void validate_exemplars(PromptKind kind, const std::vector<Exemplar>& exemplars) {
  const std::size_t want = expected_exemplars(kind);
  if (exemplars.size() != want) {
    throw ExemplarMismatchError(std::string(to_word(kind)) + " template carries " +
                                std::to_string(exemplars.size()) + " exemplars, expected " +
                                std::to_string(want));
  }
  if (kind == PromptKind::TwoShot) {
    // Two-shot means one exemplar of each label.
    if (exemplars[0].label == exemplars[1].label) {
      throw ExemplarMismatchError("two_shot template needs one exemplar per label");
    }
  }
}

void split_lines(std::string_view text, const std::function<void(std::string_view)>& fn) {
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    fn(line);
    if (end == text.size()) break;
    start = end + 1;
  }
}

bool is_markdown_decoration(char c) {
  return c == '*' || c == '`' || c == '_' || c == '#' || c == '>';
}

// One parsed response line: index + label.
struct ResponseLine {
  std::size_t index = 0;
  Label label = Label::Phishing;
};

std::optional<ResponseLine> match_response_line(std::string_view raw) {
  // Strip whitespace and markdown decoration (fences, bold, bullets).
  std::string_view s = trim_view(raw);
  while (!s.empty() && (is_markdown_decoration(s.front()) || s.front() == '-' || s.front() == '+')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && is_markdown_decoration(s.back())) s.remove_suffix(1);
  s = trim_view(s);

  std::size_t pos = 0;
  if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos]))) return std::nullopt;
  std::size_t index = 0;
  std::size_t digits = 0;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
    if (++digits > 9) return std::nullopt;  // absurd index, not a list line
    index = index * 10 + static_cast<std::size_t>(s[pos] - '0');
    ++pos;
  }
  while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  if (pos >= s.size() || (s[pos] != '.' && s[pos] != ')' && s[pos] != ':')) return std::nullopt;
  ++pos;
  while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t' ||
                            is_markdown_decoration(s[pos]))) {
    ++pos;
  }

  std::size_t word_begin = pos;
  while (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) ++pos;
  const auto label = label_from_word(s.substr(word_begin, pos - word_begin));
  if (!label) return std::nullopt;

  // Only punctuation and whitespace may follow the label word.
  for (; pos < s.size(); ++pos) {
    const unsigned char c = static_cast<unsigned char>(s[pos]);
    if (!std::ispunct(c) && !std::isspace(c)) return std::nullopt;
  }
  return ResponseLine{index, *label};
}

}  // namespace

RenderedPrompt render_batch_prompt(const PromptTemplate& tpl, const Batch& batch) {
  if (batch.samples.empty()) throw PromptError("cannot render a prompt for an empty batch");
  validate_exemplars(tpl.kind, tpl.exemplars);
  if (tpl.instruction_text.empty() || tpl.response_format_clause.empty()) {
    throw PromptError("template instruction and response format clause must be non-empty");
  }

  std::string text = rtrim(tpl.instruction_text);
  text += "\n\n";

  if (!tpl.exemplars.empty()) {
    text += "Example:\n";
    for (std::size_t i = 0; i < tpl.exemplars.size(); ++i) {
      text += std::to_string(i + 1) + ". " + tpl.exemplars[i].url + "\n";
    }
    text += "Answer:\n";
    for (std::size_t i = 0; i < tpl.exemplars.size(); ++i) {
      text += std::to_string(i + 1) + ". ";
      text += to_word(tpl.exemplars[i].label);
      text += "\n";
    }
    text += "\n";
  }

  for (std::size_t i = 0; i < batch.samples.size(); ++i) {
    text += std::to_string(i + 1) + ". " + batch.samples[i].url + "\n";
  }
  text += "\n";
  text += rtrim(tpl.response_format_clause);
  text += "\n";

  return RenderedPrompt{std::move(text), batch.samples.size(), tpl.kind};
}

std::vector<VoteValue> parse_batch_response(std::string_view text,
                                            std::size_t expected_count) {
  std::vector<VoteValue> votes(expected_count, VoteValue::Abstain);
  std::vector<bool> assigned(expected_count, false);
  split_lines(text, [&](std::string_view line) {
    const auto parsed = match_response_line(line);
    if (!parsed) return;
    if (parsed->index < 1 || parsed->index > expected_count) return;
    const std::size_t slot = parsed->index - 1;
    if (assigned[slot]) return;  // first occurrence wins
    assigned[slot] = true;
    votes[slot] = to_vote_value(parsed->label);
  });
  return votes;
}

std::string format_reference_response(std::span<const Label> labels) {
  std::string out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out += std::to_string(i + 1) + ". ";
    out += to_word(labels[i]);
    out += "\n";
  }
  return out;
}

std::vector<std::string> extract_numbered_urls(std::string_view prompt_text) {
  std::vector<std::string> current, last;
  auto close_run = [&] {
    if (!current.empty()) last = std::move(current);
    current.clear();
  };
  split_lines(prompt_text, [&](std::string_view line) {
    const std::string_view t = trim_view(line);
    std::size_t pos = 0;
    std::size_t index = 0;
    while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) {
      index = index * 10 + static_cast<std::size_t>(t[pos] - '0');
      ++pos;
    }
    if (pos == 0 || pos >= t.size() || t[pos] != '.') {
      close_run();
      return;
    }
    ++pos;
    while (pos < t.size() && (t[pos] == ' ' || t[pos] == '\t')) ++pos;
    const std::string_view payload = trim_view(t.substr(pos));
    if (payload.empty() || label_from_word(payload)) {
      close_run();  // an answer-shaped line, not a URL
      return;
    }
    if (index != current.size() + 1) close_run();
    if (index == current.size() + 1) {
      current.emplace_back(payload);
    }
  });
  close_run();
  return last;
}

PromptTemplate load_template_file(const std::filesystem::path& path, PromptKind kind) {
  std::ifstream in(path);
  if (!in) throw TemplateParseError("cannot open template file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string content = buffer.str();

  PromptTemplate tpl;
  tpl.kind = kind;

  std::string body;
  split_lines(content, [&](std::string_view line) {
    const std::string_view t = trim_view(line);
    if (t.starts_with("@exemplar")) {
      std::string_view rest = trim_view(t.substr(std::string_view("@exemplar").size()));
      const auto space = rest.find_last_of(" \t");
      if (space == std::string_view::npos) {
        throw TemplateParseError("bad exemplar line in " + path.string() +
                                 ": expected `@exemplar <url> <label>`");
      }
      const auto label = label_from_word(trim_view(rest.substr(space + 1)));
      const std::string url(trim_view(rest.substr(0, space)));
      if (!label || url.empty()) {
        throw TemplateParseError("bad exemplar line in " + path.string());
      }
      tpl.exemplars.push_back(Exemplar{url, *label});
      return;
    }
    body += line;
    body += '\n';
  });

  const auto exemplars_at = body.find(kExemplarsMarker);
  const auto urls_at = body.find(kUrlListMarker);
  if (urls_at == std::string::npos) {
    throw TemplateParseError(path.string() + " is missing the {{url_list}} marker");
  }
  if (!tpl.exemplars.empty() && exemplars_at == std::string::npos) {
    throw TemplateParseError(path.string() +
                             " declares exemplars but has no {{exemplars}} marker");
  }

  std::size_t instruction_end = urls_at;
  if (exemplars_at != std::string::npos) {
    if (exemplars_at > urls_at) {
      throw TemplateParseError(path.string() +
                               ": {{exemplars}} must precede {{url_list}}");
    }
    const std::string between = body.substr(exemplars_at + kExemplarsMarker.size(),
                                            urls_at - exemplars_at - kExemplarsMarker.size());
    if (!trim_view(between).empty()) {
      throw TemplateParseError(path.string() +
                               ": only whitespace may separate {{exemplars}} from {{url_list}}");
    }
    instruction_end = exemplars_at;
  }

  tpl.instruction_text = rtrim(std::string_view(body).substr(0, instruction_end));
  tpl.response_format_clause =
      std::string(trim_view(std::string_view(body).substr(urls_at + kUrlListMarker.size())));

  if (tpl.instruction_text.empty() || tpl.response_format_clause.empty()) {
    throw TemplateParseError(path.string() +
                             ": instruction and response format clause must be non-empty");
  }
  validate_exemplars(kind, tpl.exemplars);
  return tpl;
}

TemplateRegistry TemplateRegistry::from_directory(const std::filesystem::path& dir) {
  TemplateRegistry registry;
  for (PromptKind kind : kAllPromptKinds) {
    const auto file = dir / (std::string(to_word(kind)) + ".txt");
    if (std::filesystem::exists(file)) {
      registry.set(load_template_file(file, kind));
    }
  }
  return registry;
}

void TemplateRegistry::set(PromptTemplate tpl) {
  validate_exemplars(tpl.kind, tpl.exemplars);
  templates_[tpl.kind] = std::move(tpl);
}

const PromptTemplate& TemplateRegistry::get(PromptKind kind) const {
  const auto it = templates_.find(kind);
  if (it == templates_.end()) {
    throw PromptError("no template loaded for prompt kind " + std::string(to_word(kind)));
  }
  return it->second;
}

bool TemplateRegistry::contains(PromptKind kind) const {
  return templates_.contains(kind);
}

void check_exemplar_leakage(const TemplateRegistry& templates,
                            std::span<const PromptKind> prompts, const Dataset& ds) {
  std::unordered_set<std::string_view> urls;
  for (const UrlSample& s : ds.samples) urls.insert(s.url);
  for (PromptKind kind : prompts) {
    for (const Exemplar& ex : templates.get(kind).exemplars) {
      if (urls.contains(ex.url)) {
        throw ExemplarLeakageError("exemplar url appears in the evaluation dataset: " +
                                   ex.url);
      }
    }
  }
}

}  // namespace phishvote
