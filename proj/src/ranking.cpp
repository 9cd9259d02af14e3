#include "rigspace/ranking.hpp"

#include <fmt/format.h>
#include <tbb/parallel_for.h>

#include <algorithm>
#include <numeric>
#include <ostream>
#include <unordered_set>

#include "rigspace/csv.hpp"
#include "rigspace/error.hpp"

namespace rigspace {

Criterion Criterion::parse(std::string_view text) {
  if (text == "sum" || text == "sum_rigs") return sum_rigs();
  if (text == "max" || text == "max_rigs") return max_rigs();
  auto colon = text.find(':');
  if (colon != std::string_view::npos && colon + 1 < text.size()) {
    const auto head = text.substr(0, colon);
    std::string category(text.substr(colon + 1));
    if (head == "rig") return rig_in(std::move(category));
    if (head == "freq") return freq_in(std::move(category));
  }
  throw InvalidArgument(fmt::format(
      "unknown criterion \"{}\" (expected sum, max, rig:<category> or "
      "freq:<category>)",
      text));
}

std::string Criterion::to_string() const {
  switch (kind) {
    case Kind::kSumRigs: return "sum_rigs";
    case Kind::kMaxRigs: return "max_rigs";
    case Kind::kRigInCategory: return "rig:" + category;
    case Kind::kFreqInCategory: return "freq:" + category;
  }
  return {};
}

std::vector<std::string> RankedList::top(std::size_t n) const {
  n = std::min(n, items.size());
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(items[i].stem);
  return out;
}

std::vector<std::size_t> top_rows(const std::vector<double>& scores, std::size_t n) {
  std::vector<std::size_t> idx(scores.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  auto before = [&](std::size_t x, std::size_t y) {
    if (scores[x] != scores[y]) return scores[x] > scores[y];
    return x < y;
  };
  n = std::min(n, idx.size());
  if (n < idx.size()) {
    std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n),
                      idx.end(), before);
    idx.resize(n);
  } else {
    std::sort(idx.begin(), idx.end(), before);
  }
  return idx;
}

namespace {

RankedList make_list(const Criterion& c, const std::vector<std::string>& stems,
                     const std::vector<double>& scores) {
  RankedList list{c, {}};
  const auto order = top_rows(scores, scores.size());
  list.items.reserve(order.size());
  for (auto j : order) list.items.push_back({stems[j], scores[j]});
  return list;
}

}  // namespace

RankedList rank(const RigMatrix& rig, const Criterion& criterion) {
  switch (criterion.kind) {
    case Criterion::Kind::kSumRigs:
      return make_list(criterion, rig.stems(), rig.sums());
    case Criterion::Kind::kMaxRigs:
      return make_list(criterion, rig.stems(), rig.maxima());
    case Criterion::Kind::kRigInCategory:
      return make_list(criterion, rig.stems(),
                       rig.column(rig.category_index(criterion.category)));
    case Criterion::Kind::kFreqInCategory:
      break;
  }
  throw InvalidArgument("criterion " + criterion.to_string() +
                        " ranks a frequency matrix, not a RIG matrix");
}

RankedList rank(const FrequencyMatrix& fm, const Criterion& criterion) {
  if (criterion.kind != Criterion::Kind::kFreqInCategory) {
    throw InvalidArgument("criterion " + criterion.to_string() +
                          " ranks a RIG matrix, not a frequency matrix");
  }
  const auto& names = fm.category_names();
  auto it = std::find(names.begin(), names.end(), criterion.category);
  if (it == names.end()) {
    std::string valid;
    for (const auto& n : names) valid += (valid.empty() ? "\"" : ", \"") + n + "\"";
    throw InvalidArgument(fmt::format("unknown category \"{}\"; valid: {}",
                                      criterion.category, valid));
  }
  const auto column = fm.dense_column(static_cast<CategoryIndex>(it - names.begin()));
  return make_list(criterion, fm.stems(), {column.begin(), column.end()});
}

std::vector<TopNMatch> compare_top_n(const RankedList& a, const RankedList& b,
                                     std::vector<std::size_t> ns) {
  if (a.size() != b.size()) {
    throw InvalidArgument(fmt::format(
        "compare_top_n: lists have different lengths ({} vs {})", a.size(), b.size()));
  }
  std::sort(ns.begin(), ns.end());
  std::vector<TopNMatch> out;
  out.reserve(ns.size());
  for (auto requested : ns) {
    if (requested == 0) throw InvalidArgument("compare_top_n: n must be >= 1");
    TopNMatch row;
    row.requested = requested;
    row.n = std::min(requested, a.size());
    row.clamped = row.n != requested;
    std::unordered_set<std::string_view> top_a;
    top_a.reserve(row.n);
    for (std::size_t i = 0; i < row.n; ++i) top_a.insert(a.items[i].stem);
    for (std::size_t i = 0; i < row.n; ++i) row.matches += top_a.count(b.items[i].stem);
    row.fraction = row.n == 0 ? 0.0 : static_cast<double>(row.matches) / row.n;
    out.push_back(row);
  }
  return out;
}

bool CoverageSet::contains(std::string_view stem) const {
  return std::binary_search(members.begin(), members.end(), stem);
}

CoverageSet coverage_union(const RigMatrix& rig, std::size_t n) {
  if (n < 1) throw InvalidArgument("coverage_union: n must be >= 1");
  const std::size_t k_count = rig.categories();
  std::vector<std::vector<std::size_t>> picks(k_count);
  tbb::parallel_for(std::size_t{0}, k_count,
                    [&](std::size_t k) { picks[k] = top_rows(rig.column(k), n); });

  CoverageSet cov;
  cov.n = n;
  std::vector<double> best(rig.words(), -1.0);
  cov.per_category.resize(k_count);
  for (std::size_t k = 0; k < k_count; ++k) {
    for (auto j : picks[k]) {
      cov.per_category[k].push_back(rig.stems()[j]);
      best[j] = std::max(best[j], rig.at(j, k));
    }
  }
  double min_rig = 0.0;
  bool first = true;
  for (std::size_t j = 0; j < rig.words(); ++j) {
    if (best[j] < 0.0) continue;
    cov.members.push_back(rig.stems()[j]);
    min_rig = first ? best[j] : std::min(min_rig, best[j]);
    first = false;
  }
  cov.min_rig = min_rig;
  return cov;
}

std::size_t coverage_matches(const RankedList& sum_list, std::size_t m,
                             const CoverageSet& coverage) {
  if (m < 1) throw InvalidArgument("coverage_matches: m must be >= 1");
  m = std::min(m, sum_list.size());
  std::size_t matches = 0;
  for (std::size_t i = 0; i < m; ++i) matches += coverage.contains(sum_list.items[i].stem);
  return matches;
}

Histogram sum_histogram(const RigMatrix& rig, std::size_t m, std::size_t bins) {
  if (bins < 2) throw InvalidArgument("sum_histogram: bins must be >= 2");
  if (m < 1 || m > rig.words()) {
    throw InvalidArgument(fmt::format("sum_histogram: m must lie in [1, {}], got {}",
                                      rig.words(), m));
  }
  const auto rows = top_rows(rig.sums(), m);
  Histogram h;
  h.m = m;
  h.counts.assign(bins, 0);
  h.hi = rig.sum(rows.front());
  h.lo = rig.sum(rows.back());
  h.width = (h.hi - h.lo) / static_cast<double>(bins);
  for (auto j : rows) {
    std::size_t bin = 0;
    if (h.width > 0.0) {
      bin = static_cast<std::size_t>((rig.sum(j) - h.lo) / h.width);
      bin = std::min(bin, bins - 1);
    }
    ++h.counts[bin];
  }
  return h;
}

std::string Thesaurus::manifest() const {
  return fmt::format("criterion={}\nm={}\nmin_S={:.6f}\ncorpus_hash={}\n",
                     list.criterion.to_string(), m, min_sum, corpus_hash);
}

Thesaurus extract_thesaurus(const RigMatrix& rig, std::size_t m) {
  if (m < 1 || m > rig.words()) {
    throw InvalidArgument(fmt::format(
        "extract_thesaurus: m must lie in [1, {}], got {}", rig.words(), m));
  }
  Thesaurus t;
  t.list.criterion = Criterion::sum_rigs();
  for (auto j : top_rows(rig.sums(), m)) t.list.items.push_back({rig.stems()[j], rig.sum(j)});
  t.m = m;
  t.min_sum = t.list.items.back().score;
  t.corpus_hash = rig.source_hash();
  return t;
}

void write_ranked_csv(const RankedList& list, std::ostream& out, int precision,
                      std::size_t limit) {
  out << "rank,stem,score\n";
  const std::size_t n = std::min(limit, list.items.size());
  fmt::memory_buffer buf;
  for (std::size_t i = 0; i < n; ++i) {
    buf.clear();
    fmt::format_to(std::back_inserter(buf), "{},{},{:.{}f}\n", i + 1,
                   csv::escape(list.items[i].stem), list.items[i].score, precision);
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  }
}

}  // namespace rigspace
