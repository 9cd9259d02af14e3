#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rigspace/freq_matrix.hpp"

namespace rigspace {

/// 2x2 word-presence x category-membership table.
///
///                 in c_k   not in c_k
///   word present    a         b         |D^j|
///   word absent     c         d         M - |D^j|
///                 |D_k|    M - |D_k|     M
struct ContingencyCells {
  std::size_t a = 0;
  std::size_t b = 0;
  std::size_t c = 0;
  std::size_t d = 0;

  /// Derives the cells from w_jk, |D^j|, |D_k| and M. Throws InvalidArgument
  /// if any cell would be negative.
  static ContingencyCells from_counts(std::size_t word_in_category,
                                      std::size_t word_docs,
                                      std::size_t category_docs,
                                      std::size_t total_docs);

  std::size_t total() const { return a + b + c + d; }
  std::size_t word_docs() const { return a + b; }
  std::size_t category_docs() const { return a + c; }
  /// Same table with the word and category roles exchanged.
  ContingencyCells transposed() const { return {a, c, b, d}; }
  /// Same table with the word-presence indicator negated.
  ContingencyCells word_complemented() const { return {c, d, a, b}; }
};

/// Tolerance below zero within which a computed information gain is treated
/// as rounding noise and clamped to 0.
inline constexpr double kNegativeGainTolerance = 1e-12;

/// Entropy in bits of a Bernoulli variable with success count `x` out of
/// `n` trials; 0 log 0 = 0, so x = 0 and x = n give 0.
double binary_entropy(std::size_t x, std::size_t n);

/// H(c_k) for a category with `category_docs` of `total_docs` documents.
double category_entropy(std::size_t category_docs, std::size_t total_docs);

/// H(c_k | w_j). An empty branch (|D^j| = 0 or |D^j| = M) contributes 0.
double conditional_entropy(const ContingencyCells& cells);

/// IG(c_k, w_j) = H(c_k) - H(c_k | w_j). Never negative: rounding below zero
/// within kNegativeGainTolerance is clamped, anything beyond throws
/// NumericalError.
double information_gain(const ContingencyCells& cells);

/// IG / H(c_k), in [0, 1]. Returns 0 when H(c_k) = 0, i.e. when the
/// category holds none or all of the documents.
double relative_information_gain(const ContingencyCells& cells);

/// Word x category RIG values with the per-word sum S_j and maximum M_j.
class RigMatrix {
 public:
  RigMatrix() = default;

  std::size_t words() const { return stems_.size(); }
  std::size_t categories() const { return categories_.size(); }
  std::size_t documents() const { return documents_; }
  const std::vector<std::string>& stems() const { return stems_; }
  const std::vector<std::string>& category_names() const { return categories_; }
  const std::string& source_hash() const { return source_hash_; }

  double at(std::size_t j, std::size_t k) const { return values_[j * categories() + k]; }
  std::span<const double> row(std::size_t j) const {
    return {values_.data() + j * categories(), categories()};
  }
  std::vector<double> column(std::size_t k) const;
  const std::vector<double>& values() const { return values_; }

  double sum(std::size_t j) const { return sums_.at(j); }  // S_j
  double max(std::size_t j) const { return maxima_.at(j); }  // M_j
  const std::vector<double>& sums() const { return sums_; }
  const std::vector<double>& maxima() const { return maxima_; }

  const std::vector<double>& category_entropies() const { return entropies_; }
  bool is_degenerate(std::size_t k) const { return degenerate_.at(k) != 0; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  std::size_t category_index(std::string_view name) const;

 private:
  friend RigMatrix build_rig_matrix(const FrequencyMatrix& fm);

  std::vector<std::string> stems_;
  std::vector<std::string> categories_;
  std::vector<double> values_;
  std::vector<double> sums_;
  std::vector<double> maxima_;
  std::vector<double> entropies_;
  std::vector<char> degenerate_;
  std::vector<std::string> warnings_;
  std::size_t documents_ = 0;
  std::string source_hash_;
};

/// Evaluates every (word, category) cell, including those with w_jk = 0:
/// such a cell still carries information whenever |D^j| > 0. Zero cells
/// depend only on (|D^j|, |D_k|, M) and are computed once per row for each
/// distinct |D_k|. Rows are processed in parallel.
RigMatrix build_rig_matrix(const FrequencyMatrix& fm);

/// `stem,<category>...,sum,max`, values with `significant_digits` digits.
void write_rig_csv(const RigMatrix& rig, std::ostream& out, int significant_digits = 6);

}  // namespace rigspace
