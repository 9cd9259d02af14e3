#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "rigspace/error.hpp"
#include "rigspace/report.hpp"
#include "rigspace/synthetic.hpp"

using namespace rigspace;

namespace {

RigMatrix rig_of(const Corpus& corpus) {
  return build_rig_matrix(build_frequency_matrix(corpus, build_dictionary(corpus, 1)));
}

// Brute-force ordering of one RIG column: stable sort of (stem, value)
// pairs by value, with stems already in ascending order.
std::vector<std::pair<std::string, double>> sorted_column(const RigMatrix& rig, std::size_t k) {
  std::vector<std::pair<std::string, double>> col;
  for (std::size_t j = 0; j < rig.words(); ++j) col.emplace_back(rig.stems()[j], rig.at(j, k));
  std::stable_sort(col.begin(), col.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  return col;
}

}  // namespace

TEST_CASE("category tables follow the brute-force column order") {
  for (std::uint64_t seed = 200; seed < 220; ++seed) {
    const auto rig = rig_of(synthetic::random_corpus(seed));
    for (std::size_t k = 0; k < rig.categories(); ++k) {
      if (rig.is_degenerate(k)) continue;
      const auto expected = sorted_column(rig, k);
      const auto table = category_table(rig, rig.category_names()[k], rig.words());
      REQUIRE(table.rows.size() == expected.size());
      for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK(table.rows[i].stem == expected[i].first);
        CHECK(table.rows[i].weight == expected[i].second);
      }
    }
  }
}

TEST_CASE("word cloud weights are a prefix of the category table") {
  const auto rig = rig_of(synthetic::random_corpus(5));
  for (const auto& name : rig.category_names()) {
    const auto table = category_table(rig, name, rig.words());
    for (std::size_t n = 1; n <= rig.words(); ++n) {
      const auto cloud = wordcloud_weights(rig, name, n);
      REQUIRE(cloud.items.size() <= table.rows.size());
      CHECK(std::equal(cloud.items.begin(), cloud.items.end(), table.rows.begin()));
    }
  }
}

TEST_CASE("degenerate category and argument errors") {
  const auto corpus = Corpus::from_documents(
      {{"1", "a b", {"All", "X"}, 0}, {"2", "b c", {"All"}, 0}});
  const auto rig = rig_of(corpus);
  const auto cloud = wordcloud_weights(rig, "All", 5);
  CHECK(cloud.items.empty());
  REQUIRE(cloud.warnings.size() >= 1);
  CHECK(cloud.warnings[0].find("All") != std::string::npos);

  const auto clamped = wordcloud_weights(rig, "X", 50);
  CHECK(clamped.items.size() == rig.words());
  CHECK_FALSE(clamped.warnings.empty());

  CHECK_THROWS_AS(category_table(rig, "X", 0), InvalidArgument);
  CHECK_THROWS_AS(wordcloud_weights(rig, "X", 0), InvalidArgument);
  CHECK_THROWS_WITH_AS(wordcloud_weights(rig, "Y", 3), doctest::Contains("\"All\", \"X\""),
                       InvalidArgument);
}

TEST_CASE("table and cloud text formats") {
  CategoryTable t{"X", {{"alpha", 1.0}, {"be,ta", 0.25}}, {}};
  CHECK(t.csv(3) == "rank,stem,RIG\n1,alpha,1.000\n2,\"be,ta\",0.250\n");
  WordWeights w{{{"alpha", 1.0}, {"beta", 0.1}}, {}};
  CHECK(wordcloud_tsv(w, 2) == "alpha\t1.00\nbeta\t0.10\n");
}

TEST_CASE("histogram and comparison csv") {
  Histogram h;
  h.m = 3;
  h.lo = 0.0;
  h.hi = 1.0;
  h.width = 0.5;
  h.counts = {2, 0};
  const auto csv = histogram_csv(h, 2);
  CHECK(csv.find("bin,lower,upper,count,log10_count\n") != std::string::npos);
  CHECK(csv.find("\n0,0.00,0.50,2,0.30\n") != std::string::npos);
  CHECK(csv.find("\n1,0.50,1.00,0,\n") != std::string::npos);

  std::vector<TopNMatch> rows{{10, 10, 7, 0.7, false}, {20, 12, 12, 1.0, true}};
  CHECK(compare_csv(rows) == "n,matches,fraction\n10,7,0.700\n12,12,1.000\n");
}
