#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rigspace/freq_matrix.hpp"
#include "rigspace/rig.hpp"

namespace rigspace {

struct Criterion {
  enum class Kind { kRigInCategory, kFreqInCategory, kSumRigs, kMaxRigs };

  Kind kind = Kind::kSumRigs;
  std::string category;  // only for the per-category kinds

  static Criterion rig_in(std::string category) {
    return {Kind::kRigInCategory, std::move(category)};
  }
  static Criterion freq_in(std::string category) {
    return {Kind::kFreqInCategory, std::move(category)};
  }
  static Criterion sum_rigs() { return {Kind::kSumRigs, {}}; }
  static Criterion max_rigs() { return {Kind::kMaxRigs, {}}; }

  /// Accepts `sum`, `max`, `rig:<category>` and `freq:<category>`.
  static Criterion parse(std::string_view text);
  std::string to_string() const;

  friend bool operator==(const Criterion&, const Criterion&) = default;
};

struct RankedItem {
  std::string stem;
  double score = 0.0;

  friend bool operator==(const RankedItem&, const RankedItem&) = default;
};

/// Descending score; equal scores in ascending stem order.
struct RankedList {
  Criterion criterion;
  std::vector<RankedItem> items;

  std::size_t size() const { return items.size(); }
  /// Stems of the first min(n, size()) items.
  std::vector<std::string> top(std::size_t n) const;
};

/// Row indices of `scores` under the ranking order, truncated to `n`. Ties
/// go to the lower row; matrix rows are in stem order, so this is the
/// lexicographic tie-break.
std::vector<std::size_t> top_rows(const std::vector<double>& scores, std::size_t n);

/// rig_in_category, sum_rigs and max_rigs rank a RigMatrix;
/// freq_in_category ranks a FrequencyMatrix. Using the wrong matrix kind or
/// an unknown category throws InvalidArgument.
RankedList rank(const RigMatrix& rig, const Criterion& criterion);
RankedList rank(const FrequencyMatrix& fm, const Criterion& criterion);

struct TopNMatch {
  std::size_t requested = 0;
  std::size_t n = 0;  // requested, clamped to the list length
  std::size_t matches = 0;
  double fraction = 0.0;
  bool clamped = false;
};

/// |top_n(a) ∩ top_n(b)| for each n, in ascending n.
std::vector<TopNMatch> compare_top_n(const RankedList& a, const RankedList& b,
                                     std::vector<std::size_t> ns);

/// X_n: union over categories of the n highest-RIG words.
struct CoverageSet {
  std::size_t n = 0;
  std::vector<std::string> members;                      // sorted
  std::vector<std::vector<std::string>> per_category;    // C_{k,n}, ranked
  /// Minimum over members of the largest RIG with which the member entered
  /// some C_{k,n}.
  double min_rig = 0.0;

  bool contains(std::string_view stem) const;
};

CoverageSet coverage_union(const RigMatrix& rig, std::size_t n);

/// |T_m ∩ X_n| where T_m is the first m items of `sum_list`.
std::size_t coverage_matches(const RankedList& sum_list, std::size_t m,
                             const CoverageSet& coverage);

struct Histogram {
  std::size_t m = 0;
  double lo = 0.0;   // min S_j over T_m
  double hi = 0.0;   // max S_j over T_m
  double width = 0.0;
  std::vector<std::size_t> counts;

  double min_sum() const { return lo; }
};

/// Equal-width histogram of S_j over the top-m words by S_j. When every
/// value is equal all of them land in the first bin.
Histogram sum_histogram(const RigMatrix& rig, std::size_t m, std::size_t bins);

struct Thesaurus {
  RankedList list;  // first m items of the sum_rigs ranking
  std::size_t m = 0;
  double min_sum = 0.0;
  std::string corpus_hash;

  /// key=value lines: criterion, m, min_S, corpus_hash.
  std::string manifest() const;
};

Thesaurus extract_thesaurus(const RigMatrix& rig, std::size_t m);

/// `rank,stem,score`, scores fixed with `precision` decimals.
void write_ranked_csv(const RankedList& list, std::ostream& out, int precision = 6,
                      std::size_t limit = static_cast<std::size_t>(-1));

}  // namespace rigspace
