#include "phishvote/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "phishvote/rng.hpp"

namespace phishvote {

namespace {

std::string trim(std::string_view text) {
  const auto begin = text.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  const auto end = text.find_last_not_of(" \t\r");
  return std::string(text.substr(begin, end - begin + 1));
}

std::string lowercase(std::string text) {
  std::transform(text.begin(), text.end(), text.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return text;
}

}  // namespace

std::size_t Dataset::count(Label label) const {
  return static_cast<std::size_t>(
      std::count_if(samples.begin(), samples.end(),
                    [&](const UrlSample& s) { return s.truth == label; }));
}

MalformedRowError::MalformedRowError(std::size_t line, const std::string& reason)
    : DatasetError("malformed row at line " + std::to_string(line) + ": " + reason),
      line_(line) {}

DuplicateUrlError::DuplicateUrlError(const std::string& url)
    : DatasetError("duplicate url: " + url), url_(url) {}

InsufficientClassError::InsufficientClassError(Label label, std::size_t available,
                                               std::size_t requested)
    : DatasetError("insufficient " + std::string(to_word(label)) + " samples: have " +
                   std::to_string(available) + ", need " + std::to_string(requested)),
      label_(label),
      available_(available),
      requested_(requested) {}

Dataset load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open dataset file: " + path.string());

  Dataset ds;
  ds.provenance = path.string();
  std::unordered_set<std::string> seen;

  std::string line;
  std::size_t line_no = 0;
  bool first_content_line = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;

    const auto comma = line.rfind(',');
    if (comma == std::string::npos)
      throw MalformedRowError(line_no, "expected `url,label`");
    const std::string url = trim(line.substr(0, comma));
    const std::string label_text = trim(line.substr(comma + 1));

    if (first_content_line && lowercase(url) == "url" &&
        lowercase(label_text) == "label") {
      first_content_line = false;
      continue;  // header row
    }
    first_content_line = false;

    const auto label = label_from_word(label_text);
    if (!label) throw MalformedRowError(line_no, "unknown label `" + label_text + "`");
    if (url.empty()) throw MalformedRowError(line_no, "empty url");
    if (!seen.insert(url).second) throw DuplicateUrlError(url);

    ds.samples.push_back(UrlSample{url, *label});
  }
  if (in.bad()) throw IoError("read failure on " + path.string());
  return ds;
}

void write_csv(const Dataset& ds, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open output file: " + path.string());
  out << "url,label\n";
  for (const UrlSample& s : ds.samples) out << s.url << ',' << to_word(s.truth) << '\n';
  if (!out.flush()) throw IoError("write failure on " + path.string());
}

Dataset balanced_subsample(const Dataset& ds, std::size_t per_class,
                           std::uint64_t seed) {
  std::vector<std::size_t> phishing, legitimate;
  for (std::size_t i = 0; i < ds.samples.size(); ++i) {
    (ds.samples[i].truth == Label::Phishing ? phishing : legitimate).push_back(i);
  }
  if (phishing.size() < per_class)
    throw InsufficientClassError(Label::Phishing, phishing.size(), per_class);
  if (legitimate.size() < per_class)
    throw InsufficientClassError(Label::Legitimate, legitimate.size(), per_class);

  SplitMix64 rng(seed);
  seeded_shuffle(phishing, rng);
  seeded_shuffle(legitimate, rng);

  std::vector<std::size_t> picked;
  picked.insert(picked.end(), phishing.begin(), phishing.begin() + per_class);
  picked.insert(picked.end(), legitimate.begin(), legitimate.begin() + per_class);
  std::sort(picked.begin(), picked.end());  // keep source order

  Dataset out;
  std::ostringstream provenance;
  provenance << ds.provenance << " (balanced subsample, per_class=" << per_class
             << ", seed=" << seed << ")";
  out.provenance = provenance.str();
  out.samples.reserve(picked.size());
  for (std::size_t i : picked) out.samples.push_back(ds.samples[i]);
  return out;
}

std::vector<Batch> make_batches(const Dataset& ds, std::size_t batch_size) {
  if (batch_size == 0) throw DatasetError("batch_size must be >= 1");
  std::vector<Batch> batches;
  for (std::size_t start = 0; start < ds.samples.size(); start += batch_size) {
    const std::size_t end = std::min(start + batch_size, ds.samples.size());
    Batch b;
    b.index = batches.size();
    b.samples.assign(ds.samples.begin() + start, ds.samples.begin() + end);
    batches.push_back(std::move(b));
  }
  return batches;
}

}  // namespace phishvote
