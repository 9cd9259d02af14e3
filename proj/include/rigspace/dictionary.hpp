#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "rigspace/corpus.hpp"

namespace rigspace {

using WordIndex = std::uint32_t;

struct WordEntry {
  std::string stem;
  std::size_t doc_count = 0;  // |D^j|
  WordIndex row = 0;
};

/// Stems whose document frequency reaches `threshold`, sorted by stem.
class Dictionary {
 public:
  Dictionary() = default;
  /// `entries` need not be sorted; rows are reassigned in stem order.
  Dictionary(std::vector<WordEntry> entries, std::size_t threshold);

  std::size_t size() const { return entries_.size(); }  // N
  std::size_t threshold() const { return threshold_; }
  const std::vector<WordEntry>& entries() const { return entries_; }
  const WordEntry& entry(WordIndex row) const { return entries_.at(row); }
  const std::string& stem(WordIndex row) const { return entries_.at(row).stem; }
  std::vector<std::string> stems() const;

  std::optional<WordIndex> find(std::string_view stem) const;

 private:
  std::vector<WordEntry> entries_;
  std::unordered_map<std::string, WordIndex> index_;
  std::size_t threshold_ = 1;
};

/// Document frequency counts presence: a stem repeated inside one document
/// contributes one. Parallel over documents; the result does not depend on
/// document order or worker count.
Dictionary build_dictionary(const Corpus& corpus, std::size_t threshold = 10);

/// `stem,doc_count` rows sorted by stem, with a header line.
void write_dictionary_csv(const Dictionary& dict, std::ostream& out);
Dictionary read_dictionary_csv(std::istream& in, std::size_t threshold);

}  // namespace rigspace
