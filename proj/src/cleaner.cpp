#include "rigspace/cleaner.hpp"

#include <fmt/format.h>
#include <tbb/enumerable_thread_specific.h>
#include <tbb/parallel_for.h>

#include <algorithm>
#include <fstream>
#include <functional>
#include <regex>
#include <sstream>

#include "rigspace/csv.hpp"
#include "rigspace/error.hpp"
#include "rigspace/text.hpp"

namespace rigspace {

namespace {

constexpr std::string_view kYearPlaceholder = "{YEAR}";
constexpr std::string_view kYearRegex = "(?:19|20)[0-9]{2}";

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_alnum(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + 32);
  }
  return out;
}

std::string_view to_string(RuleKind k) { return k == RuleKind::kLiteral ? "literal" : "regex"; }

std::string_view to_string(Anchor a) {
  switch (a) {
    case Anchor::kHead: return "head";
    case Anchor::kTail: return "tail";
    case Anchor::kAnywhere: return "anywhere";
  }
  return "";
}

// Literal pattern -> ECMAScript source, plus the longest fixed fragment a
// matching text must contain.
std::pair<std::string, std::string> compile_literal(std::string_view pattern) {
  std::string re;
  std::string fragment;
  std::string run;
  auto close_run = [&] {
    if (run.size() > fragment.size()) fragment = run;
    run.clear();
  };

  const bool starts_word =
      is_alnum(pattern.front()) || pattern.substr(0, kYearPlaceholder.size()) == kYearPlaceholder;
  if (starts_word) re += "\\b";

  std::size_t i = 0;
  bool ends_word = false;
  while (i < pattern.size()) {
    if (pattern.substr(i, kYearPlaceholder.size()) == kYearPlaceholder) {
      close_run();
      re += kYearRegex;
      i += kYearPlaceholder.size();
      ends_word = true;
      continue;
    }
    const char c = pattern[i];
    if (is_space(c)) {
      close_run();
      while (i < pattern.size() && is_space(pattern[i])) ++i;
      re += "\\s+";
      ends_word = false;
      continue;
    }
    if (std::string_view("\\^$.|?*+()[]{}").find(c) != std::string_view::npos) {
      re.push_back('\\');
    }
    re.push_back(c);
    run.push_back(c);
    ends_word = is_alnum(c);
    ++i;
  }
  close_run();
  if (ends_word) re += "\\b";
  if (pattern.back() != '.') re += "\\.?";
  return {re, fragment};
}

void collapse_whitespace(std::string& text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  text = std::move(out);
}

}  // namespace

std::string CleaningRule::to_line() const {
  return fmt::format("{}\t{}\t{}\t{}", to_string(kind), to_string(anchor),
                     case_sensitive ? "cs" : "ci", pattern);
}

std::vector<CleaningRule> parse_rules(std::istream& in) {
  std::vector<CleaningRule> rules;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;

    std::vector<std::string> fields;
    std::size_t pos = 0;
    for (int f = 0; f < 3; ++f) {
      const auto tab = line.find('\t', pos);
      if (tab == std::string::npos) {
        throw InputError(fmt::format(
            "rule line {}: expected kind<TAB>anchor<TAB>case<TAB>pattern", line_no));
      }
      fields.push_back(line.substr(pos, tab - pos));
      pos = tab + 1;
    }
    CleaningRule rule;
    rule.pattern = line.substr(pos);
    rule.source_line = line_no;
    if (fields[0] == "literal") {
      rule.kind = RuleKind::kLiteral;
    } else if (fields[0] == "regex") {
      rule.kind = RuleKind::kRegex;
    } else {
      throw InputError(fmt::format("rule line {}: unknown kind \"{}\"", line_no, fields[0]));
    }
    if (fields[1] == "head") {
      rule.anchor = Anchor::kHead;
    } else if (fields[1] == "tail") {
      rule.anchor = Anchor::kTail;
    } else if (fields[1] == "anywhere") {
      rule.anchor = Anchor::kAnywhere;
    } else {
      throw InputError(fmt::format("rule line {}: unknown anchor \"{}\"", line_no, fields[1]));
    }
    if (fields[2] == "cs") {
      rule.case_sensitive = true;
    } else if (fields[2] == "ci") {
      rule.case_sensitive = false;
    } else {
      throw InputError(fmt::format("rule line {}: case flag must be cs or ci, got \"{}\"",
                                   line_no, fields[2]));
    }
    if (rule.pattern.empty()) {
      throw InputError(fmt::format("rule line {}: empty pattern", line_no));
    }
    rules.push_back(std::move(rule));
  }
  return rules;
}

std::vector<CleaningRule> load_rules(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open rule file " + path.string());
  return parse_rules(in);
}

struct RuleSet::Compiled {
  std::regex re;
  std::string fragment;  // empty: no prefilter
};

RuleSet::RuleSet(std::vector<CleaningRule> rules, CleanerOptions options)
    : rules_(std::move(rules)), options_(options) {
  for (const auto& rule : rules_) {
    if (rule.pattern.empty()) throw InputError("cleaning rule with empty pattern");
    auto compiled = std::make_unique<Compiled>();
    std::string source = rule.pattern;
    if (rule.kind == RuleKind::kLiteral) {
      std::tie(source, compiled->fragment) = compile_literal(rule.pattern);
      if (!rule.case_sensitive) compiled->fragment = ascii_lower(compiled->fragment);
    }
    auto flags = std::regex::ECMAScript | std::regex::optimize;
    if (!rule.case_sensitive) flags |= std::regex::icase;
    try {
      compiled->re = std::regex(source, flags);
    } catch (const std::regex_error& e) {
      throw InputError(fmt::format("cleaning rule {}(\"{}\") does not compile: {}",
                                   rule.source_line > 0
                                       ? fmt::format("at line {} ", rule.source_line)
                                       : std::string(),
                                   rule.pattern, e.what()));
    }
    compiled_.push_back(std::move(compiled));
  }
}

RuleSet::~RuleSet() = default;
RuleSet::RuleSet(RuleSet&&) noexcept = default;
RuleSet& RuleSet::operator=(RuleSet&&) noexcept = default;

bool RuleSet::clean(std::string& text, std::vector<std::size_t>& matches) const {
  if (matches.size() < rules_.size()) matches.resize(rules_.size(), 0);
  bool changed = false;
  std::string lowered;
  bool lowered_valid = false;
  std::vector<std::pair<std::size_t, std::size_t>> spans;

  for (std::size_t pass = 0; pass < options_.max_passes; ++pass) {
    bool pass_changed = false;
    for (std::size_t r = 0; r < rules_.size(); ++r) {
      const auto& rule = rules_[r];
      const auto& compiled = *compiled_[r];
      if (!compiled.fragment.empty()) {
        if (rule.case_sensitive) {
          if (text.find(compiled.fragment) == std::string::npos) continue;
        } else {
          if (!lowered_valid) {
            lowered = ascii_lower(text);
            lowered_valid = true;
          }
          if (lowered.find(compiled.fragment) == std::string::npos) continue;
        }
      }

      spans.clear();
      const std::size_t len = text.size();
      for (auto it = std::sregex_iterator(text.begin(), text.end(), compiled.re);
           it != std::sregex_iterator(); ++it) {
        const auto start = static_cast<std::size_t>(it->position(0));
        const auto end = start + static_cast<std::size_t>(it->length(0));
        if (end == start) continue;
        bool in_window = true;
        if (rule.anchor == Anchor::kHead) {
          in_window = start < options_.window;
        } else if (rule.anchor == Anchor::kTail) {
          in_window = end + options_.window > len;
        }
        if (in_window) spans.emplace_back(start, end);
      }
      if (spans.empty()) continue;

      std::string out;
      out.reserve(text.size());
      std::size_t cursor = 0;
      for (const auto& [start, end] : spans) {
        out.append(text, cursor, start - cursor);
        out.push_back(' ');
        cursor = end;
      }
      out.append(text, cursor, std::string::npos);
      text = std::move(out);
      lowered_valid = false;
      matches[r] += spans.size();
      pass_changed = true;
    }
    if (!pass_changed) break;
    changed = true;
    collapse_whitespace(text);
    lowered_valid = false;
  }
  return changed;
}

std::string CleaningReport::csv() const {
  std::string out = "rule,matches\n";
  for (std::size_t r = 0; r < rules.size(); ++r) {
    out += fmt::format("{},{}\n", csv::escape(rules[r]), matches[r]);
  }
  return out;
}

std::string CleaningReport::summary() const {
  std::size_t total = 0;
  for (auto m : matches) total += m;
  std::string s = fmt::format(
      "clean: {} documents, {} modified, {} dropped below minimum length, {} "
      "notice matches over {} rules\n",
      documents, documents_modified, documents_dropped, total, rules.size());
  if (documents_short_unmodified > 0) {
    s += fmt::format("  {} unmodified documents were already below the minimum\n",
                     documents_short_unmodified);
  }
  return s;
}

CleanResult clean_corpus(const Corpus& corpus, const RuleSet& rules,
                         std::size_t min_tokens) {
  const std::size_t m = corpus.size();
  std::vector<std::string> texts(m);
  std::vector<char> modified(m, 0);
  tbb::enumerable_thread_specific<std::vector<std::size_t>> partial(
      std::vector<std::size_t>(rules.size(), 0));
  tbb::parallel_for(std::size_t{0}, m, [&](std::size_t i) {
    texts[i] = corpus.document(i).text;
    modified[i] = rules.clean(texts[i], partial.local()) ? 1 : 0;
  });

  CleaningReport report;
  report.documents = m;
  report.matches.assign(rules.size(), 0);
  for (const auto& counts : partial) {
    for (std::size_t r = 0; r < rules.size(); ++r) report.matches[r] += counts[r];
  }
  for (const auto& rule : rules.rules()) {
    report.rules.push_back(fmt::format("{} {}", to_string(rule.anchor), rule.pattern));
  }

  std::vector<Document> kept;
  kept.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    Document d = corpus.document(i);
    d.text = std::move(texts[i]);
    d.token_count = count_whitespace_tokens(d.text);
    report.documents_modified += modified[i];
    if (d.token_count < min_tokens) {
      if (modified[i]) {
        ++report.documents_dropped;
      } else {
        ++report.documents_short_unmodified;
      }
      continue;
    }
    kept.push_back(std::move(d));
  }
  return {Corpus::from_documents(std::move(kept)), std::move(report)};
}

std::map<std::string, std::size_t> count_term_documents(
    const Corpus& corpus, const std::vector<std::string>& terms) {
  if (terms.empty()) throw InvalidArgument("count_term_documents: no terms given");
  std::vector<std::string> keys;
  for (const auto& t : terms) keys.push_back(stem(ascii_lower(t)));

  tbb::enumerable_thread_specific<std::vector<std::size_t>> partial(
      std::vector<std::size_t>(terms.size(), 0));
  tbb::enumerable_thread_specific<StemCache> caches;
  tbb::parallel_for(std::size_t{0}, corpus.size(), [&](std::size_t i) {
    const auto stems = stem_set(corpus.document(i).text, caches.local());
    auto& counts = partial.local();
    for (std::size_t t = 0; t < keys.size(); ++t) {
      counts[t] += std::binary_search(stems.begin(), stems.end(), keys[t]);
    }
  });
  std::map<std::string, std::size_t> out;
  for (std::size_t t = 0; t < terms.size(); ++t) {
    std::size_t total = 0;
    for (const auto& counts : partial) total += counts[t];
    out[terms[t]] = total;
  }
  return out;
}

}  // namespace rigspace
