#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "phishvote/types.hpp"

namespace phishvote {

/// A raw URL string plus ground truth. URLs are opaque: no canonicalization,
/// percent-decoding, or normalized-form deduplication — the classifiers under
/// test see the exact text.
struct UrlSample {
  std::string url;
  Label truth = Label::Legitimate;

  bool operator==(const UrlSample&) const = default;
};

struct Dataset {
  std::vector<UrlSample> samples;
  std::string provenance;  // source path + sampling seed, free-form

  std::size_t size() const { return samples.size(); }
  std::size_t count(Label label) const;
};

struct Batch {
  std::size_t index = 0;
  std::vector<UrlSample> samples;
};

class DatasetError : public Error {
 public:
  using Error::Error;
};

class IoError : public DatasetError {
 public:
  using DatasetError::DatasetError;
};

class MalformedRowError : public DatasetError {
 public:
  MalformedRowError(std::size_t line, const std::string& reason);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class DuplicateUrlError : public DatasetError {
 public:
  explicit DuplicateUrlError(const std::string& url);
  const std::string& url() const { return url_; }

 private:
  std::string url_;
};

class InsufficientClassError : public DatasetError {
 public:
  InsufficientClassError(Label label, std::size_t available, std::size_t requested);
  Label label() const { return label_; }
  std::size_t available() const { return available_; }
  std::size_t requested() const { return requested_; }

 private:
  Label label_;
  std::size_t available_;
  std::size_t requested_;
};

/// Reads a `url,label` CSV in file order. An initial `url,label` header row
/// is detected and skipped; blank lines are ignored. The label is everything
/// after the LAST comma, so URLs containing commas need no quoting.
Dataset load_csv(const std::filesystem::path& path);

/// Writes the canonical interchange form: a `url,label` header then one row
/// per sample, in order.
void write_csv(const Dataset& ds, const std::filesystem::path& path);

/// Exactly per_class samples of each label, drawn without replacement by a
/// seeded uniform shuffle. Output preserves the source ordering of the chosen
/// samples; identical (ds, per_class, seed) gives identical output.
Dataset balanced_subsample(const Dataset& ds, std::size_t per_class,
                           std::uint64_t seed);

/// Order-preserving partition into ceil(n / batch_size) batches; every batch
/// except possibly the last holds exactly batch_size samples.
std::vector<Batch> make_batches(const Dataset& ds, std::size_t batch_size);

}  // namespace phishvote
