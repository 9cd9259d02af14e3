#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "rigspace/corpus.hpp"

namespace rigspace {

enum class RuleKind { kLiteral, kRegex };
enum class Anchor { kHead, kTail, kAnywhere };

/// One notice pattern.
///
/// Literal patterns are matched with three relaxations: any whitespace run
/// matches any non-empty whitespace run, `{YEAR}` matches a four-digit year
/// 1900-2099, and a pattern that does not end in '.' also consumes one
/// trailing '.'. Alphanumeric pattern ends must fall on word boundaries.
/// Regex patterns use ECMAScript syntax and are taken as written.
struct CleaningRule {
  std::string pattern;
  RuleKind kind = RuleKind::kLiteral;
  Anchor anchor = Anchor::kTail;
  bool case_sensitive = false;
  std::size_t source_line = 0;  // 0 when not read from a file

  /// `kind<TAB>anchor<TAB>cs|ci<TAB>pattern`
  std::string to_line() const;
};

/// Parses the rule file format; `#` starts a comment line. Throws
/// InputError naming the line on any malformed entry.
std::vector<CleaningRule> parse_rules(std::istream& in);
std::vector<CleaningRule> load_rules(const std::filesystem::path& path);

struct CleanerOptions {
  /// Head matches must start in the first `window` bytes; tail matches must
  /// end in the last `window` bytes.
  std::size_t window = 300;
  /// Rule list passes per document; cleaning stops earlier at a fixed point.
  std::size_t max_passes = 16;
};

/// Rules compiled once and shared read-only by all workers.
class RuleSet {
 public:
  /// Throws InputError naming the rule if a pattern does not compile.
  explicit RuleSet(std::vector<CleaningRule> rules, CleanerOptions options = {});
  ~RuleSet();
  RuleSet(RuleSet&&) noexcept;
  RuleSet& operator=(RuleSet&&) noexcept;

  const std::vector<CleaningRule>& rules() const { return rules_; }
  const CleanerOptions& options() const { return options_; }
  std::size_t size() const { return rules_.size(); }

  /// Applies the rules in order, repeating passes until nothing matches.
  /// Adds per-rule match counts to `matches` (resized as needed) and returns
  /// true if the text changed. An unchanged text is left byte-identical;
  /// a changed one has its whitespace collapsed and trimmed.
  bool clean(std::string& text, std::vector<std::size_t>& matches) const;

 private:
  struct Compiled;
  std::vector<CleaningRule> rules_;
  CleanerOptions options_;
  std::vector<std::unique_ptr<Compiled>> compiled_;
};

struct CleaningReport {
  std::vector<std::string> rules;     // "<anchor> <pattern>", in rule order
  std::vector<std::size_t> matches;   // per rule
  std::size_t documents = 0;
  std::size_t documents_modified = 0;
  std::size_t documents_dropped = 0;  // modified and now below min_tokens
  /// Unmodified documents already below min_tokens (only possible when the
  /// ingest filter was looser than the cleaning one); also removed.
  std::size_t documents_short_unmodified = 0;

  std::string csv() const;  // rule,matches
  std::string summary() const;
};

struct CleanResult {
  Corpus corpus;
  CleaningReport report;
};

/// Cleans every document (in parallel; the report does not depend on the
/// worker count) and removes those left with fewer than `min_tokens`
/// whitespace tokens.
CleanResult clean_corpus(const Corpus& corpus, const RuleSet& rules,
                         std::size_t min_tokens);

/// Documents whose stem set contains the stem of each term.
std::map<std::string, std::size_t> count_term_documents(
    const Corpus& corpus, const std::vector<std::string>& terms);

}  // namespace rigspace
