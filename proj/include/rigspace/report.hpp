#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "rigspace/ranking.hpp"
#include "rigspace/rig.hpp"

namespace rigspace {

struct WordWeight {
  std::string stem;
  double weight = 0.0;

  friend bool operator==(const WordWeight&, const WordWeight&) = default;
};

struct WordWeights {
  std::vector<WordWeight> items;
  std::vector<std::string> warnings;
};

/// Top-n stems of a category with weight = RIG, for word-cloud rendering.
/// A zero-entropy category yields an empty list and a warning; top_n is
/// clamped to the dictionary size.
WordWeights wordcloud_weights(const RigMatrix& rig, std::string_view category,
                              std::size_t top_n);

struct CategoryTable {
  std::string category;
  std::vector<WordWeight> rows;
  std::vector<std::string> warnings;

  /// `rank,stem,RIG` with fixed `precision` decimals.
  std::string csv(int precision = 6) const;
};

/// Same selection as wordcloud_weights; top_n = 0 throws InvalidArgument.
CategoryTable category_table(const RigMatrix& rig, std::string_view category,
                             std::size_t top_n);

/// Tab-separated `stem<TAB>weight` lines.
std::string wordcloud_tsv(const WordWeights& weights, int precision = 6);

/// `bin,lower,upper,count,log10_count`; empty bins get an empty log column.
std::string histogram_csv(const Histogram& h, int precision = 6);

/// `n,matches,fraction` in ascending n.
std::string compare_csv(const std::vector<TopNMatch>& rows, int precision = 3);

}  // namespace rigspace
