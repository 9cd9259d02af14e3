#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rigspace/corpus.hpp"
#include "rigspace/dictionary.hpp"

namespace rigspace {

struct CategoryCount {
  CategoryIndex category = 0;
  std::uint32_t count = 0;

  friend bool operator==(const CategoryCount&, const CategoryCount&) = default;
};

/// Sparse word x category document counts w_jk with their marginals.
///
/// Each row stores its non-zero cells sorted by category index. Invariants
/// checked on construction: w_jk <= min(|D^j|, |D_k|), |D^j| <= sum_k w_jk,
/// |D^j| <= M and |D_k| <= M.
class FrequencyMatrix {
 public:
  FrequencyMatrix() = default;
  FrequencyMatrix(std::vector<std::string> stems,
                  std::vector<std::string> categories,
                  std::vector<std::vector<CategoryCount>> rows,
                  std::vector<std::size_t> row_doc_counts,
                  std::vector<std::size_t> col_doc_counts,
                  std::size_t documents, std::string source_hash = {});

  std::size_t words() const { return stems_.size(); }           // N
  std::size_t categories() const { return categories_.size(); }  // K
  std::size_t documents() const { return documents_; }           // M

  const std::vector<std::string>& stems() const { return stems_; }
  const std::vector<std::string>& category_names() const { return categories_; }
  const std::string& source_hash() const { return source_hash_; }

  std::span<const CategoryCount> row(WordIndex j) const { return rows_.at(j); }
  std::uint32_t count(WordIndex j, CategoryIndex k) const;
  std::size_t row_doc_count(WordIndex j) const { return row_doc_counts_.at(j); }
  std::size_t col_doc_count(CategoryIndex k) const { return col_doc_counts_.at(k); }
  const std::vector<std::size_t>& col_doc_counts() const { return col_doc_counts_; }

  std::vector<std::uint32_t> dense_row(WordIndex j) const;
  std::vector<std::uint32_t> dense_column(CategoryIndex k) const;
  std::size_t nonzeros() const;

  friend bool operator==(const FrequencyMatrix&, const FrequencyMatrix&) = default;

 private:
  std::vector<std::string> stems_;
  std::vector<std::string> categories_;
  std::vector<std::vector<CategoryCount>> rows_;
  std::vector<std::size_t> row_doc_counts_;
  std::vector<std::size_t> col_doc_counts_;
  std::size_t documents_ = 0;
  std::string source_hash_;
};

/// w_jk = number of documents of category k containing stem j at least once.
/// Throws ConsistencyError when a recounted |D^j| disagrees with `dict`.
FrequencyMatrix build_frequency_matrix(const Corpus& corpus, const Dictionary& dict);

struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;  // row-major

  double at(std::size_t j, std::size_t k) const { return values[j * cols + k]; }
  double& at(std::size_t j, std::size_t k) { return values[j * cols + k]; }
};

struct Normalized {
  DenseMatrix matrix;
  std::vector<std::string> warnings;
};

/// P_jk = w_jk / sum_i w_ji.
Normalized normalize_rows_l1(const FrequencyMatrix& fm);
/// Q_jk = w_jk / sum_i w_ik. All-zero columns stay zero and are reported.
Normalized normalize_cols_l1(const FrequencyMatrix& fm);
/// w_jk / (|D_k| * sum_i w_ji / |D_i|); columns with |D_k| = 0 contribute 0.
Normalized normalize_two_step(const FrequencyMatrix& fm);

/// Header `stem,<category>...` and, when `with_doc_count`, a trailing
/// `doc_count` column holding |D^j|.
void write_frequency_csv(const FrequencyMatrix& fm, std::ostream& out,
                         bool with_doc_count = true);

/// Inverse of write_frequency_csv(with_doc_count = true). Column marginals
/// and M are not part of the CSV and must be supplied.
FrequencyMatrix read_frequency_csv(std::istream& in,
                                   std::vector<std::size_t> col_doc_counts,
                                   std::size_t documents,
                                   std::string source_hash = {});

void write_dense_csv(const DenseMatrix& m, const std::vector<std::string>& stems,
                     const std::vector<std::string>& categories, int precision,
                     std::ostream& out);

}  // namespace rigspace
