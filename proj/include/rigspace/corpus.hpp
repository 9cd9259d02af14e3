#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace rigspace {

using CategoryIndex = std::uint32_t;

struct Document {
  std::string id;
  std::string text;
  std::vector<std::string> categories;  // distinct, order as given
  std::size_t token_count = 0;          // whitespace tokens of `text`
};

/// Ordered set of category names. Indices follow lexicographic order of
/// the names, so the column layout of every matrix is stable for a corpus.
class CategoryRegistry {
 public:
  CategoryRegistry() = default;
  explicit CategoryRegistry(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(CategoryIndex k) const { return names_.at(k); }

  bool contains(std::string_view name) const;
  /// Throws InvalidArgument listing the valid names when `name` is unknown.
  CategoryIndex index(std::string_view name) const;

 private:
  std::vector<std::string> names_;
  std::map<std::string, CategoryIndex, std::less<>> index_;
};

/// Immutable collection of labelled documents (the sample space).
class Corpus {
 public:
  Corpus() = default;

  /// Validates unique ids and non-empty category sets, builds the registry.
  static Corpus from_documents(std::vector<Document> documents);

  const std::vector<Document>& documents() const { return documents_; }
  const Document& document(std::size_t i) const { return documents_.at(i); }
  const CategoryRegistry& registry() const { return registry_; }

  std::size_t size() const { return documents_.size(); }  // M
  std::size_t category_count() const { return registry_.size(); }  // K

  /// Registry indices of document i's categories, ascending.
  const std::vector<CategoryIndex>& category_indices(std::size_t i) const {
    return category_indices_.at(i);
  }

  /// SHA-256 over ids, categories and texts in corpus order.
  std::string content_hash() const;

 private:
  std::vector<Document> documents_;
  CategoryRegistry registry_;
  std::vector<std::vector<CategoryIndex>> category_indices_;
};

std::size_t count_whitespace_tokens(std::string_view text);

enum class DropReason { kMalformed, kNoCategory, kTooShort, kTooLong };

std::string_view to_string(DropReason reason);

struct RecordError {
  std::size_t line = 0;
  std::string message;
};

struct IngestReport {
  std::size_t records_read = 0;
  std::size_t retained = 0;
  std::map<std::string, std::size_t> dropped;  // reason -> count
  std::vector<RecordError> errors;             // malformed records only
  /// Documents with more categories than `category_warning_threshold`.
  std::size_t many_category_documents = 0;
  std::size_t category_warning_threshold = 6;

  std::size_t dropped_total() const;
  /// Human-readable block for standard error.
  std::string summary() const;
  /// `reason,count` lines, every reason present (zero counts included).
  std::string counts_csv() const;
};

struct IngestOptions {
  std::size_t min_tokens = 30;
  std::size_t max_tokens = 500;
  std::size_t category_warning_threshold = 6;
};

struct IngestResult {
  Corpus corpus;
  IngestReport report;
};

/// Reads a JSON Lines corpus. Malformed records are dropped and reported;
/// a duplicate id or a file without any record throws InputError.
IngestResult ingest(const std::filesystem::path& path,
                    const IngestOptions& options = {});
IngestResult ingest_stream(std::istream& in, const IngestOptions& options = {});

/// One JSON object per line, the same schema `ingest` reads.
void write_jsonl(const Corpus& corpus, std::ostream& out);

/// D_k for every category, as document ids in corpus order.
std::map<std::string, std::vector<std::string>> category_doc_sets(
    const Corpus& corpus);

}  // namespace rigspace
