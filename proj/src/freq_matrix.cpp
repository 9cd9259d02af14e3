#include "rigspace/freq_matrix.hpp"

#include <fmt/format.h>
#include <tbb/enumerable_thread_specific.h>
#include <tbb/parallel_for.h>

#include <algorithm>
#include <ostream>

#include "rigspace/csv.hpp"
#include "rigspace/error.hpp"
#include "rigspace/text.hpp"

namespace rigspace {

FrequencyMatrix::FrequencyMatrix(std::vector<std::string> stems,
                                 std::vector<std::string> categories,
                                 std::vector<std::vector<CategoryCount>> rows,
                                 std::vector<std::size_t> row_doc_counts,
                                 std::vector<std::size_t> col_doc_counts,
                                 std::size_t documents, std::string source_hash)
    : stems_(std::move(stems)),
      categories_(std::move(categories)),
      rows_(std::move(rows)),
      row_doc_counts_(std::move(row_doc_counts)),
      col_doc_counts_(std::move(col_doc_counts)),
      documents_(documents),
      source_hash_(std::move(source_hash)) {
  const std::size_t n = stems_.size();
  const std::size_t k_count = categories_.size();
  if (rows_.size() != n || row_doc_counts_.size() != n ||
      col_doc_counts_.size() != k_count) {
    throw ConsistencyError("frequency matrix: dimension mismatch");
  }
  for (std::size_t k = 0; k < k_count; ++k) {
    if (col_doc_counts_[k] > documents_) {
      throw ConsistencyError(fmt::format(
          "frequency matrix: |D_k| = {} exceeds M = {} for \"{}\"",
          col_doc_counts_[k], documents_, categories_[k]));
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t dj = row_doc_counts_[j];
    if (dj > documents_) {
      throw ConsistencyError(fmt::format(
          "frequency matrix: |D^j| = {} exceeds M for \"{}\"", dj, stems_[j]));
    }
    std::size_t row_sum = 0;
    CategoryIndex prev = 0;
    for (std::size_t p = 0; p < rows_[j].size(); ++p) {
      const auto& cell = rows_[j][p];
      if (cell.category >= k_count || (p > 0 && cell.category <= prev) ||
          cell.count == 0) {
        throw ConsistencyError(fmt::format(
            "frequency matrix: malformed sparse row for \"{}\"", stems_[j]));
      }
      if (cell.count > dj || cell.count > col_doc_counts_[cell.category]) {
        throw ConsistencyError(fmt::format(
            "frequency matrix: w_jk = {} exceeds min(|D^j|, |D_k|) at (\"{}\", \"{}\")",
            cell.count, stems_[j], categories_[cell.category]));
      }
      prev = cell.category;
      row_sum += cell.count;
    }
    if (dj > row_sum) {
      throw ConsistencyError(fmt::format(
          "frequency matrix: |D^j| = {} exceeds sum_k w_jk = {} for \"{}\"", dj,
          row_sum, stems_[j]));
    }
  }
}

std::uint32_t FrequencyMatrix::count(WordIndex j, CategoryIndex k) const {
  const auto& r = rows_.at(j);
  auto it = std::lower_bound(r.begin(), r.end(), k,
                             [](const CategoryCount& c, CategoryIndex v) {
                               return c.category < v;
                             });
  return (it != r.end() && it->category == k) ? it->count : 0;
}

std::vector<std::uint32_t> FrequencyMatrix::dense_row(WordIndex j) const {
  std::vector<std::uint32_t> out(categories(), 0);
  for (const auto& c : rows_.at(j)) out[c.category] = c.count;
  return out;
}

std::vector<std::uint32_t> FrequencyMatrix::dense_column(CategoryIndex k) const {
  std::vector<std::uint32_t> out(words(), 0);
  for (std::size_t j = 0; j < words(); ++j) out[j] = count(static_cast<WordIndex>(j), k);
  return out;
}

std::size_t FrequencyMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.size();
  return n;
}

FrequencyMatrix build_frequency_matrix(const Corpus& corpus, const Dictionary& dict) {
  const std::size_t n = dict.size();
  const std::size_t k_count = corpus.category_count();

  // Documents are analysed in parallel blocks; the counts are accumulated
  // serially, in corpus order, into a dense N x K scratch table that is
  // compressed to sparse rows at the end.
  std::vector<std::uint32_t> scratch(n * k_count, 0);
  std::vector<std::size_t> row_docs(n, 0);
  constexpr std::size_t kBlock = 4096;
  std::vector<std::vector<WordIndex>> block_rows;
  tbb::enumerable_thread_specific<StemCache> caches;

  for (std::size_t start = 0; start < corpus.size(); start += kBlock) {
    const std::size_t end = std::min(corpus.size(), start + kBlock);
    block_rows.assign(end - start, {});
    tbb::parallel_for(start, end, [&](std::size_t i) {
      auto& cache = caches.local();
      auto& rows = block_rows[i - start];
      for (const auto& s : stem_set(corpus.document(i).text, cache)) {
        if (auto row = dict.find(s)) rows.push_back(*row);
      }
    });
    for (std::size_t i = start; i < end; ++i) {
      const auto& cats = corpus.category_indices(i);
      for (WordIndex j : block_rows[i - start]) {
        ++row_docs[j];
        std::uint32_t* row = scratch.data() + static_cast<std::size_t>(j) * k_count;
        for (CategoryIndex k : cats) ++row[k];
      }
    }
  }

  for (std::size_t j = 0; j < n; ++j) {
    if (row_docs[j] != dict.entry(static_cast<WordIndex>(j)).doc_count) {
      throw ConsistencyError(fmt::format(
          "dictionary/corpus mismatch: \"{}\" has doc_count {} in the dictionary "
          "but occurs in {} documents",
          dict.stem(static_cast<WordIndex>(j)),
          dict.entry(static_cast<WordIndex>(j)).doc_count, row_docs[j]));
    }
  }

  std::vector<std::vector<CategoryCount>> rows(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::uint32_t* row = scratch.data() + j * k_count;
    for (std::size_t k = 0; k < k_count; ++k) {
      if (row[k] > 0) rows[j].push_back({static_cast<CategoryIndex>(k), row[k]});
    }
  }
  scratch = {};

  std::vector<std::size_t> col_docs(k_count, 0);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    for (CategoryIndex k : corpus.category_indices(i)) ++col_docs[k];
  }
  return FrequencyMatrix(dict.stems(), corpus.registry().names(), std::move(rows),
                         std::move(row_docs), std::move(col_docs), corpus.size(),
                         corpus.content_hash());
}

namespace {

DenseMatrix zeros(const FrequencyMatrix& fm) {
  return {fm.words(), fm.categories(),
          std::vector<double>(fm.words() * fm.categories(), 0.0)};
}

}  // namespace

Normalized normalize_rows_l1(const FrequencyMatrix& fm) {
  Normalized out{zeros(fm), {}};
  for (std::size_t j = 0; j < fm.words(); ++j) {
    const auto row = fm.row(static_cast<WordIndex>(j));
    double sum = 0.0;
    for (const auto& c : row) sum += c.count;
    if (sum == 0.0) {
      out.warnings.push_back(fmt::format("row \"{}\" is all zero", fm.stems()[j]));
      continue;
    }
    for (const auto& c : row) out.matrix.at(j, c.category) = c.count / sum;
  }
  return out;
}

Normalized normalize_cols_l1(const FrequencyMatrix& fm) {
  Normalized out{zeros(fm), {}};
  std::vector<double> col_sum(fm.categories(), 0.0);
  for (std::size_t j = 0; j < fm.words(); ++j) {
    for (const auto& c : fm.row(static_cast<WordIndex>(j))) col_sum[c.category] += c.count;
  }
  for (std::size_t k = 0; k < fm.categories(); ++k) {
    if (col_sum[k] == 0.0) {
      out.warnings.push_back(
          fmt::format("column \"{}\" is all zero", fm.category_names()[k]));
    }
  }
  for (std::size_t j = 0; j < fm.words(); ++j) {
    for (const auto& c : fm.row(static_cast<WordIndex>(j))) {
      out.matrix.at(j, c.category) = c.count / col_sum[c.category];
    }
  }
  return out;
}

Normalized normalize_two_step(const FrequencyMatrix& fm) {
  Normalized out{zeros(fm), {}};
  for (std::size_t j = 0; j < fm.words(); ++j) {
    const auto row = fm.row(static_cast<WordIndex>(j));
    double sum = 0.0;
    for (const auto& c : row) {
      const double dk = static_cast<double>(fm.col_doc_count(c.category));
      const double v = dk > 0 ? c.count / dk : 0.0;
      out.matrix.at(j, c.category) = v;
      sum += v;
    }
    if (sum == 0.0) {
      out.warnings.push_back(fmt::format("row \"{}\" is all zero", fm.stems()[j]));
      continue;
    }
    for (const auto& c : row) out.matrix.at(j, c.category) /= sum;
  }
  return out;
}

void write_frequency_csv(const FrequencyMatrix& fm, std::ostream& out,
                         bool with_doc_count) {
  std::vector<std::string> header{"stem"};
  header.insert(header.end(), fm.category_names().begin(), fm.category_names().end());
  if (with_doc_count) header.emplace_back("doc_count");
  out << csv::join(header) << '\n';
  std::string line;
  for (std::size_t j = 0; j < fm.words(); ++j) {
    line = csv::escape(fm.stems()[j]);
    for (auto v : fm.dense_row(static_cast<WordIndex>(j))) {
      line.push_back(',');
      line += std::to_string(v);
    }
    if (with_doc_count) {
      line.push_back(',');
      line += std::to_string(fm.row_doc_count(static_cast<WordIndex>(j)));
    }
    line.push_back('\n');
    out << line;
  }
}

FrequencyMatrix read_frequency_csv(std::istream& in,
                                   std::vector<std::size_t> col_doc_counts,
                                   std::size_t documents, std::string source_hash) {
  std::vector<std::string> fields;
  if (!csv::read_record(in, fields) || fields.size() < 3 || fields.front() != "stem" ||
      fields.back() != "doc_count") {
    throw InputError("frequency csv: expected header `stem,<categories>,doc_count`");
  }
  std::vector<std::string> categories(fields.begin() + 1, fields.end() - 1);
  const std::size_t k_count = categories.size();
  std::vector<std::string> stems;
  std::vector<std::vector<CategoryCount>> rows;
  std::vector<std::size_t> row_docs;
  std::size_t line = 1;
  while (csv::read_record(in, fields)) {
    ++line;
    if (fields.size() != k_count + 2) {
      throw InputError(fmt::format("frequency csv line {}: expected {} fields", line,
                                   k_count + 2));
    }
    try {
      stems.push_back(fields[0]);
      std::vector<CategoryCount> row;
      for (std::size_t k = 0; k < k_count; ++k) {
        const auto v = std::stoul(fields[k + 1]);
        if (v > 0) row.push_back({static_cast<CategoryIndex>(k), static_cast<std::uint32_t>(v)});
      }
      rows.push_back(std::move(row));
      row_docs.push_back(std::stoull(fields.back()));
    } catch (const std::logic_error&) {
      throw InputError(fmt::format("frequency csv line {}: bad count", line));
    }
  }
  return FrequencyMatrix(std::move(stems), std::move(categories), std::move(rows),
                         std::move(row_docs), std::move(col_doc_counts), documents,
                         std::move(source_hash));
}

void write_dense_csv(const DenseMatrix& m, const std::vector<std::string>& stems,
                     const std::vector<std::string>& categories, int precision,
                     std::ostream& out) {
  std::vector<std::string> header{"stem"};
  header.insert(header.end(), categories.begin(), categories.end());
  out << csv::join(header) << '\n';
  fmt::memory_buffer buf;
  for (std::size_t j = 0; j < m.rows; ++j) {
    buf.clear();
    fmt::format_to(std::back_inserter(buf), "{}", csv::escape(stems[j]));
    for (std::size_t k = 0; k < m.cols; ++k) {
      fmt::format_to(std::back_inserter(buf), ",{:.{}f}", m.at(j, k), precision);
    }
    buf.push_back('\n');
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  }
}

}  // namespace rigspace
