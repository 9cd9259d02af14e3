#include "rigspace/report.hpp"

#include <fmt/format.h>

#include <cmath>

#include "rigspace/csv.hpp"
#include "rigspace/error.hpp"

namespace rigspace {

namespace {

std::vector<WordWeight> top_weights(const RigMatrix& rig, std::size_t k,
                                    std::size_t top_n) {
  const auto column = rig.column(k);
  std::vector<WordWeight> out;
  for (auto j : top_rows(column, top_n)) out.push_back({rig.stems()[j], column[j]});
  return out;
}

}  // namespace

WordWeights wordcloud_weights(const RigMatrix& rig, std::string_view category,
                              std::size_t top_n) {
  const auto k = rig.category_index(category);
  if (top_n < 1) throw InvalidArgument("wordcloud_weights: top_n must be >= 1");
  WordWeights out;
  if (rig.is_degenerate(k)) {
    out.warnings.push_back(fmt::format(
        "category \"{}\" has zero entropy; no informative words", category));
    return out;
  }
  if (top_n > rig.words()) {
    out.warnings.push_back(fmt::format("top_n {} clamped to dictionary size {}", top_n,
                                       rig.words()));
  }
  out.items = top_weights(rig, k, top_n);
  return out;
}

CategoryTable category_table(const RigMatrix& rig, std::string_view category,
                             std::size_t top_n) {
  if (top_n == 0) throw InvalidArgument("category_table: top_n must be >= 1");
  auto weights = wordcloud_weights(rig, category, top_n);
  return {std::string(category), std::move(weights.items), std::move(weights.warnings)};
}

std::string CategoryTable::csv(int precision) const {
  std::string out = "rank,stem,RIG\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out += fmt::format("{},{},{:.{}f}\n", i + 1, csv::escape(rows[i].stem),
                       rows[i].weight, precision);
  }
  return out;
}

std::string wordcloud_tsv(const WordWeights& weights, int precision) {
  std::string out;
  for (const auto& w : weights.items) {
    out += fmt::format("{}\t{:.{}f}\n", w.stem, w.weight, precision);
  }
  return out;
}

std::string histogram_csv(const Histogram& h, int precision) {
  std::string out = fmt::format("# m={} min_S={:.{}f} max_S={:.{}f}\n", h.m, h.lo,
                                precision, h.hi, precision);
  out += "bin,lower,upper,count,log10_count\n";
  for (std::size_t b = 0; b < h.counts.size(); ++b) {
    const double lower = h.lo + h.width * static_cast<double>(b);
    const double upper = b + 1 == h.counts.size() ? h.hi : lower + h.width;
    out += fmt::format("{},{:.{}f},{:.{}f},{},", b, lower, precision, upper, precision,
                       h.counts[b]);
    if (h.counts[b] > 0) {
      out += fmt::format("{:.{}f}", std::log10(static_cast<double>(h.counts[b])), precision);
    }
    out += '\n';
  }
  return out;
}

std::string compare_csv(const std::vector<TopNMatch>& rows, int precision) {
  std::string out = "n,matches,fraction\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{:.{}f}\n", r.n, r.matches, r.fraction, precision);
  }
  return out;
}

}  // namespace rigspace
