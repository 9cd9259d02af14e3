#include "rigspace/dictionary.hpp"

#include <fmt/format.h>
#include <tbb/blocked_range.h>
#include <tbb/enumerable_thread_specific.h>
#include <tbb/parallel_for.h>

#include <algorithm>
#include <ostream>

#include "rigspace/csv.hpp"
#include "rigspace/error.hpp"
#include "rigspace/text.hpp"

namespace rigspace {

Dictionary::Dictionary(std::vector<WordEntry> entries, std::size_t threshold)
    : entries_(std::move(entries)), threshold_(threshold) {
  std::sort(entries_.begin(), entries_.end(),
            [](const WordEntry& a, const WordEntry& b) { return a.stem < b.stem; });
  index_.reserve(entries_.size());
  for (std::size_t j = 0; j < entries_.size(); ++j) {
    entries_[j].row = static_cast<WordIndex>(j);
    if (!index_.emplace(entries_[j].stem, entries_[j].row).second) {
      throw InvalidArgument("dictionary: duplicate stem \"" + entries_[j].stem + "\"");
    }
  }
}

std::vector<std::string> Dictionary::stems() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.stem);
  return out;
}

std::optional<WordIndex> Dictionary::find(std::string_view stem) const {
  auto it = index_.find(std::string(stem));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Dictionary build_dictionary(const Corpus& corpus, std::size_t threshold) {
  if (threshold < 1) throw InvalidArgument("dictionary threshold must be >= 1");

  using Counts = std::unordered_map<std::string, std::size_t>;
  tbb::enumerable_thread_specific<Counts> partial;
  tbb::enumerable_thread_specific<StemCache> caches;
  tbb::parallel_for(tbb::blocked_range<std::size_t>(0, corpus.size(), 256),
                    [&](const tbb::blocked_range<std::size_t>& r) {
                      auto& counts = partial.local();
                      auto& cache = caches.local();
                      for (std::size_t i = r.begin(); i != r.end(); ++i) {
                        for (auto& s : stem_set(corpus.document(i).text, cache)) {
                          ++counts[std::move(s)];
                        }
                      }
                    });

  Counts total;
  for (auto& counts : partial) {
    if (total.empty()) {
      total = std::move(counts);
      continue;
    }
    for (auto& [s, n] : counts) total[s] += n;
  }

  std::vector<WordEntry> entries;
  for (auto& [s, n] : total) {
    if (n >= threshold) entries.push_back({s, n, 0});
  }
  return Dictionary(std::move(entries), threshold);
}

void write_dictionary_csv(const Dictionary& dict, std::ostream& out) {
  out << "stem,doc_count\n";
  for (const auto& e : dict.entries()) {
    out << csv::escape(e.stem) << ',' << e.doc_count << '\n';
  }
}

Dictionary read_dictionary_csv(std::istream& in, std::size_t threshold) {
  std::vector<std::string> fields;
  if (!csv::read_record(in, fields) || fields.size() != 2 || fields[0] != "stem") {
    throw InputError("dictionary csv: missing `stem,doc_count` header");
  }
  std::vector<WordEntry> entries;
  std::size_t line = 1;
  while (csv::read_record(in, fields)) {
    ++line;
    if (fields.size() != 2) {
      throw InputError(fmt::format("dictionary csv line {}: expected 2 fields", line));
    }
    try {
      entries.push_back({fields[0], std::stoull(fields[1]), 0});
    } catch (const std::exception&) {
      throw InputError(fmt::format("dictionary csv line {}: bad count", line));
    }
  }
  return Dictionary(std::move(entries), threshold);
}

}  // namespace rigspace
