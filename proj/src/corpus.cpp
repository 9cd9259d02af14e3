#include "rigspace/corpus.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <istream>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>
#include <unordered_set>

#include "rigspace/error.hpp"
#include "rigspace/hash.hpp"

namespace rigspace {

CategoryRegistry::CategoryRegistry(std::vector<std::string> names)
    : names_(std::move(names)) {
  std::sort(names_.begin(), names_.end());
  names_.erase(std::unique(names_.begin(), names_.end()), names_.end());
  for (std::size_t k = 0; k < names_.size(); ++k) {
    index_.emplace(names_[k], static_cast<CategoryIndex>(k));
  }
}

bool CategoryRegistry::contains(std::string_view name) const {
  return index_.find(name) != index_.end();
}

CategoryIndex CategoryRegistry::index(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) {
    std::string valid;
    for (const auto& n : names_) {
      if (!valid.empty()) valid += ", ";
      valid += '"' + n + '"';
    }
    throw InvalidArgument(fmt::format("unknown category \"{}\"; valid: {}",
                                      name, valid));
  }
  return it->second;
}

Corpus Corpus::from_documents(std::vector<Document> documents) {
  if (documents.empty()) throw InputError("corpus has no documents");
  std::unordered_set<std::string> ids;
  std::set<std::string> names;
  for (auto& d : documents) {
    if (d.categories.empty()) {
      throw InvalidArgument("document \"" + d.id + "\" has no category");
    }
    if (!ids.insert(d.id).second) {
      throw InputError("duplicate document id \"" + d.id + "\"");
    }
    names.insert(d.categories.begin(), d.categories.end());
    d.token_count = count_whitespace_tokens(d.text);
  }

  Corpus c;
  c.registry_ = CategoryRegistry({names.begin(), names.end()});
  c.category_indices_.reserve(documents.size());
  for (const auto& d : documents) {
    std::vector<CategoryIndex> idx;
    idx.reserve(d.categories.size());
    for (const auto& name : d.categories) idx.push_back(c.registry_.index(name));
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    c.category_indices_.push_back(std::move(idx));
  }
  c.documents_ = std::move(documents);
  return c;
}

std::string Corpus::content_hash() const {
  Sha256 h;
  for (const auto& d : documents_) {
    h.update_field(d.id);
    h.update_field(std::to_string(d.categories.size()));
    for (const auto& c : d.categories) h.update_field(c);
    h.update_field(d.text);
  }
  return h.hex_digest();
}

std::size_t count_whitespace_tokens(std::string_view text) {
  std::size_t n = 0;
  bool in_token = false;
  for (unsigned char ch : text) {
    const bool space = ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r' ||
                       ch == '\f' || ch == '\v';
    if (!space && !in_token) ++n;
    in_token = !space;
  }
  return n;
}

std::string_view to_string(DropReason reason) {
  switch (reason) {
    case DropReason::kMalformed: return "malformed";
    case DropReason::kNoCategory: return "no-category";
    case DropReason::kTooShort: return "too-short";
    case DropReason::kTooLong: return "too-long";
  }
  return "unknown";
}

std::size_t IngestReport::dropped_total() const {
  std::size_t n = 0;
  for (const auto& [reason, count] : dropped) n += count;
  return n;
}

std::string IngestReport::summary() const {
  std::string s = fmt::format("ingest: {} records read, {} retained, {} dropped\n",
                              records_read, retained, dropped_total());
  for (const auto& [reason, count] : dropped) {
    if (count > 0) s += fmt::format("  {}: {}\n", reason, count);
  }
  for (const auto& e : errors) {
    s += fmt::format("  line {}: {}\n", e.line, e.message);
  }
  if (many_category_documents > 0) {
    s += fmt::format("  warning: {} documents carry more than {} categories\n",
                     many_category_documents, category_warning_threshold);
  }
  return s;
}

std::string IngestReport::counts_csv() const {
  std::string s = "reason,count\n";
  for (auto r : {DropReason::kMalformed, DropReason::kNoCategory,
                 DropReason::kTooShort, DropReason::kTooLong}) {
    auto it = dropped.find(std::string(to_string(r)));
    s += fmt::format("{},{}\n", to_string(r), it == dropped.end() ? 0 : it->second);
  }
  s += fmt::format("retained,{}\n", retained);
  return s;
}

namespace {

// Returns an error message, or empty on success.
std::string parse_record(const std::string& line, Document& out) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    return std::string("invalid JSON: ") + e.what();
  }
  if (!j.is_object()) return "record is not a JSON object";
  auto id = j.find("id");
  auto text = j.find("text");
  auto cats = j.find("categories");
  if (id == j.end() || !id->is_string()) return "missing or non-string \"id\"";
  if (id->get_ref<const std::string&>().empty()) return "empty \"id\"";
  if (text == j.end() || !text->is_string()) return "missing or non-string \"text\"";
  if (cats == j.end() || !cats->is_array()) return "missing or non-array \"categories\"";
  out.id = id->get<std::string>();
  out.text = text->get<std::string>();
  out.categories.clear();
  for (const auto& c : *cats) {
    if (!c.is_string()) return "non-string category";
    auto name = c.get<std::string>();
    if (name.empty()) return "empty category name";
    if (std::find(out.categories.begin(), out.categories.end(), name) ==
        out.categories.end()) {
      out.categories.push_back(std::move(name));
    }
  }
  return {};
}

bool is_blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(), [](unsigned char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
  });
}

}  // namespace

IngestResult ingest_stream(std::istream& in, const IngestOptions& options) {
  if (options.min_tokens > options.max_tokens) {
    throw InvalidArgument(fmt::format("min_tokens ({}) exceeds max_tokens ({})",
                                      options.min_tokens, options.max_tokens));
  }
  IngestResult result;
  auto& report = result.report;
  report.category_warning_threshold = options.category_warning_threshold;
  for (auto r : {DropReason::kMalformed, DropReason::kNoCategory,
                 DropReason::kTooShort, DropReason::kTooLong}) {
    report.dropped[std::string(to_string(r))] = 0;
  }
  auto drop = [&](DropReason r) { ++report.dropped[std::string(to_string(r))]; };

  std::vector<Document> kept;
  std::unordered_set<std::string> seen_ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    ++report.records_read;
    Document doc;
    if (auto err = parse_record(line, doc); !err.empty()) {
      drop(DropReason::kMalformed);
      report.errors.push_back({line_no, std::move(err)});
      continue;
    }
    if (!seen_ids.insert(doc.id).second) {
      throw InputError(fmt::format("line {}: duplicate document id \"{}\"",
                                   line_no, doc.id));
    }
    if (doc.categories.empty()) {
      drop(DropReason::kNoCategory);
      continue;
    }
    doc.token_count = count_whitespace_tokens(doc.text);
    if (doc.token_count < options.min_tokens) {
      drop(DropReason::kTooShort);
      continue;
    }
    if (doc.token_count > options.max_tokens) {
      drop(DropReason::kTooLong);
      continue;
    }
    if (doc.categories.size() > options.category_warning_threshold) {
      ++report.many_category_documents;
    }
    kept.push_back(std::move(doc));
  }
  if (report.records_read == 0) throw InputError("corpus file is empty");
  if (kept.empty()) throw InputError("no document survived ingestion filters");
  report.retained = kept.size();
  result.corpus = Corpus::from_documents(std::move(kept));
  return result;
}

IngestResult ingest(const std::filesystem::path& path,
                    const IngestOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open corpus file " + path.string());
  return ingest_stream(in, options);
}

void write_jsonl(const Corpus& corpus, std::ostream& out) {
  for (const auto& d : corpus.documents()) {
    nlohmann::ordered_json j;
    j["id"] = d.id;
    j["text"] = d.text;
    j["categories"] = d.categories;
    out << j.dump() << '\n';
  }
}

std::map<std::string, std::vector<std::string>> category_doc_sets(
    const Corpus& corpus) {
  std::map<std::string, std::vector<std::string>> sets;
  for (const auto& name : corpus.registry().names()) sets[name];
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    for (auto k : corpus.category_indices(i)) {
      sets[corpus.registry().name(k)].push_back(corpus.document(i).id);
    }
  }
  return sets;
}

}  // namespace rigspace
