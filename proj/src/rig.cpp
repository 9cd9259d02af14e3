#include "rigspace/rig.hpp"

#include <fmt/format.h>
#include <tbb/blocked_range.h>
#include <tbb/parallel_for.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>

#include "rigspace/csv.hpp"
#include "rigspace/error.hpp"

namespace rigspace {

ContingencyCells ContingencyCells::from_counts(std::size_t word_in_category,
                                               std::size_t word_docs,
                                               std::size_t category_docs,
                                               std::size_t total_docs) {
  const std::size_t w = word_in_category;
  if (w > word_docs || w > category_docs || word_docs > total_docs ||
      category_docs > total_docs || category_docs + word_docs - w > total_docs) {
    throw InvalidArgument(fmt::format(
        "inconsistent contingency counts: w={}, |D^j|={}, |D_k|={}, M={}", w,
        word_docs, category_docs, total_docs));
  }
  return {w, word_docs - w, category_docs - w,
          total_docs - category_docs - (word_docs - w)};
}

double binary_entropy(std::size_t x, std::size_t n) {
  if (n == 0 || x == 0 || x >= n) return 0.0;
  const double nd = static_cast<double>(n);
  const double p = static_cast<double>(x) / nd;
  const double q = static_cast<double>(n - x) / nd;
  return -p * std::log2(p) - q * std::log2(q);
}

double category_entropy(std::size_t category_docs, std::size_t total_docs) {
  if (total_docs == 0) throw InvalidArgument("category_entropy: M must be >= 1");
  if (category_docs > total_docs) {
    throw InvalidArgument("category_entropy: |D_k| exceeds M");
  }
  return binary_entropy(category_docs, total_docs);
}

double conditional_entropy(const ContingencyCells& cells) {
  const std::size_t m = cells.total();
  if (m == 0) throw InvalidArgument("conditional_entropy: empty table");
  const std::size_t present = cells.a + cells.b;
  const std::size_t absent = cells.c + cells.d;
  const double md = static_cast<double>(m);
  double h = 0.0;
  if (present > 0) h += static_cast<double>(present) / md * binary_entropy(cells.a, present);
  if (absent > 0) h += static_cast<double>(absent) / md * binary_entropy(cells.c, absent);
  return h;
}

double information_gain(const ContingencyCells& cells) {
  const double ig = category_entropy(cells.category_docs(), cells.total()) -
                    conditional_entropy(cells);
  if (ig >= 0.0) return ig;
  if (ig >= -kNegativeGainTolerance) return 0.0;
  throw NumericalError(fmt::format(
      "negative information gain {:.3e} for cells ({}, {}, {}, {})", ig, cells.a,
      cells.b, cells.c, cells.d));
}

double relative_information_gain(const ContingencyCells& cells) {
  const double h = category_entropy(cells.category_docs(), cells.total());
  if (h == 0.0) return 0.0;
  return std::min(1.0, information_gain(cells) / h);
}

std::vector<double> RigMatrix::column(std::size_t k) const {
  std::vector<double> out(words());
  for (std::size_t j = 0; j < words(); ++j) out[j] = at(j, k);
  return out;
}

std::size_t RigMatrix::category_index(std::string_view name) const {
  auto it = std::find(categories_.begin(), categories_.end(), name);
  if (it == categories_.end()) {
    std::string valid;
    for (const auto& n : categories_) {
      if (!valid.empty()) valid += ", ";
      valid += '"' + n + '"';
    }
    throw InvalidArgument(
        fmt::format("unknown category \"{}\"; valid: {}", name, valid));
  }
  return static_cast<std::size_t>(it - categories_.begin());
}

RigMatrix build_rig_matrix(const FrequencyMatrix& fm) {
  const std::size_t n = fm.words();
  const std::size_t k_count = fm.categories();
  const std::size_t m = fm.documents();

  RigMatrix rig;
  rig.stems_ = fm.stems();
  rig.categories_ = fm.category_names();
  rig.documents_ = m;
  rig.source_hash_ = fm.source_hash();
  rig.values_.assign(n * k_count, 0.0);
  rig.sums_.assign(n, 0.0);
  rig.maxima_.assign(n, 0.0);
  rig.entropies_.resize(k_count);
  rig.degenerate_.assign(k_count, 0);

  // Columns sharing |D_k| share the zero-cell RIG of a row.
  std::map<std::size_t, std::size_t> class_ids;
  std::vector<std::size_t> column_class(k_count);
  for (std::size_t k = 0; k < k_count; ++k) {
    const std::size_t dk = fm.col_doc_count(static_cast<CategoryIndex>(k));
    column_class[k] = class_ids.emplace(dk, class_ids.size()).first->second;
    rig.entropies_[k] = m > 0 ? category_entropy(dk, m) : 0.0;
    if (rig.entropies_[k] == 0.0) {
      rig.degenerate_[k] = 1;
      rig.warnings_.push_back(fmt::format(
          "category \"{}\" has zero entropy (|D_k| = {} of {}); its RIG column is 0",
          fm.category_names()[k], dk, m));
    }
  }
  const std::size_t class_count = class_ids.size();

  tbb::parallel_for(
      tbb::blocked_range<std::size_t>(0, n, 64),
      [&](const tbb::blocked_range<std::size_t>& range) {
        std::vector<double> memo(class_count);
        for (std::size_t j = range.begin(); j != range.end(); ++j) {
          const auto word = static_cast<WordIndex>(j);
          const std::size_t dj = fm.row_doc_count(word);
          std::fill(memo.begin(), memo.end(), std::numeric_limits<double>::quiet_NaN());
          const auto cells_row = fm.row(word);
          auto next = cells_row.begin();
          double* out = rig.values_.data() + j * k_count;
          double sum = 0.0;
          double best = 0.0;
          for (std::size_t k = 0; k < k_count; ++k) {
            const std::size_t dk = fm.col_doc_count(static_cast<CategoryIndex>(k));
            double value;
            if (next != cells_row.end() && next->category == k) {
              value = relative_information_gain(
                  ContingencyCells::from_counts(next->count, dj, dk, m));
              ++next;
            } else {
              double& cached = memo[column_class[k]];
              if (std::isnan(cached)) {
                cached = relative_information_gain(
                    ContingencyCells::from_counts(0, dj, dk, m));
              }
              value = cached;
            }
            out[k] = value;
            sum += value;
            best = std::max(best, value);
          }
          rig.sums_[j] = sum;
          rig.maxima_[j] = best;
        }
      });
  return rig;
}

void write_rig_csv(const RigMatrix& rig, std::ostream& out, int significant_digits) {
  std::vector<std::string> header{"stem"};
  header.insert(header.end(), rig.category_names().begin(), rig.category_names().end());
  header.emplace_back("sum");
  header.emplace_back("max");
  out << csv::join(header) << '\n';
  fmt::memory_buffer buf;
  for (std::size_t j = 0; j < rig.words(); ++j) {
    buf.clear();
    auto it = std::back_inserter(buf);
    fmt::format_to(it, "{}", csv::escape(rig.stems()[j]));
    for (double v : rig.row(j)) fmt::format_to(it, ",{:.{}g}", v, significant_digits);
    fmt::format_to(it, ",{:.{}g},{:.{}g}\n", rig.sum(j), significant_digits, rig.max(j),
                   significant_digits);
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  }
}

}  // namespace rigspace
