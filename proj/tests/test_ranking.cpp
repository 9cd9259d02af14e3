#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "rigspace/error.hpp"
#include "rigspace/ranking.hpp"
#include "rigspace/synthetic.hpp"

using namespace rigspace;

namespace {

RigMatrix rig_of(const Corpus& corpus, std::size_t threshold = 1) {
  return build_rig_matrix(build_frequency_matrix(corpus, build_dictionary(corpus, threshold)));
}

RankedList list_of(std::vector<std::pair<std::string, double>> items) {
  RankedList l;
  for (auto& [s, v] : items) l.items.push_back({s, v});
  return l;
}

void check_order(const RankedList& l) {
  for (std::size_t i = 1; i < l.items.size(); ++i) {
    const auto& a = l.items[i - 1];
    const auto& b = l.items[i];
    REQUIRE((a.score > b.score || (a.score == b.score && a.stem < b.stem)));
  }
}

}  // namespace

TEST_CASE("criterion parsing") {
  CHECK(Criterion::parse("sum") == Criterion::sum_rigs());
  CHECK(Criterion::parse("max_rigs") == Criterion::max_rigs());
  CHECK(Criterion::parse("rig:Dance") == Criterion::rig_in("Dance"));
  CHECK(Criterion::parse("freq:A:B") == Criterion::freq_in("A:B"));
  CHECK(Criterion::rig_in("X").to_string() == "rig:X");
  CHECK_THROWS_AS(Criterion::parse("median"), InvalidArgument);
  CHECK_THROWS_AS(Criterion::parse("rig:"), InvalidArgument);
}

TEST_CASE("top_rows: descending with lower row first on ties") {
  CHECK(top_rows({0.1, 0.5, 0.5, 0.2}, 10) == std::vector<std::size_t>{1, 2, 3, 0});
  CHECK(top_rows({0.1, 0.5, 0.5, 0.2}, 2) == std::vector<std::size_t>{1, 2});
  CHECK(top_rows({0.0, 0.0, 0.0}, 3) == std::vector<std::size_t>{0, 1, 2});
  CHECK(top_rows({}, 3).empty());
}

TEST_CASE("rankings are total orders covering the dictionary") {
  const auto corpus = synthetic::random_corpus(11);
  const auto fm = build_frequency_matrix(corpus, build_dictionary(corpus, 1));
  const auto rig = build_rig_matrix(fm);
  std::vector<Criterion> criteria{Criterion::sum_rigs(), Criterion::max_rigs()};
  for (const auto& name : rig.category_names()) criteria.push_back(Criterion::rig_in(name));
  for (const auto& c : criteria) {
    const auto l = rank(rig, c);
    check_order(l);
    std::set<std::string> stems;
    for (const auto& it : l.items) stems.insert(it.stem);
    CHECK(stems.size() == rig.words());
    CHECK(rank(rig, c).items == l.items);
  }
  for (const auto& name : fm.category_names()) check_order(rank(fm, Criterion::freq_in(name)));
}

TEST_CASE("all-zero scores give a lexicographic list") {
  // Every word occurs in every document: all RIGs vanish.
  const auto corpus = Corpus::from_documents(
      {{"1", "pear apple fig", {"A"}, 0}, {"2", "fig pear apple", {"B"}, 0}});
  const auto l = rank(rig_of(corpus), Criterion::sum_rigs());
  CHECK(l.top(3) == std::vector<std::string>{"appl", "fig", "pear"});
}

TEST_CASE("wrong matrix kind or unknown category") {
  const auto corpus = synthetic::random_corpus(3);
  const auto fm = build_frequency_matrix(corpus, build_dictionary(corpus, 1));
  const auto rig = build_rig_matrix(fm);
  CHECK_THROWS_AS(rank(rig, Criterion::freq_in("cat0")), InvalidArgument);
  CHECK_THROWS_AS(rank(fm, Criterion::sum_rigs()), InvalidArgument);
  CHECK_THROWS_WITH_AS(rank(rig, Criterion::rig_in("nope")), doctest::Contains("valid:"),
                       InvalidArgument);
  CHECK_THROWS_WITH_AS(rank(fm, Criterion::freq_in("nope")), doctest::Contains("valid:"),
                       InvalidArgument);
}

TEST_CASE("order is invariant under positive scaling of scores") {
  const auto rig = rig_of(synthetic::random_corpus(21));
  const auto scores = rig.sums();
  std::vector<double> scaled;
  for (double s : scores) scaled.push_back(s * 2.0);
  CHECK(top_rows(scores, scores.size()) == top_rows(scaled, scaled.size()));
}

TEST_CASE("compare_top_n") {
  const auto a = list_of({{"w", 3}, {"x", 2}, {"y", 1}, {"z", 0}});
  const auto b = list_of({{"z", 3}, {"x", 2}, {"w", 1}, {"y", 0}});
  const auto rows = compare_top_n(a, b, {4, 1, 2, 3});
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].n == 1);
  CHECK(rows[0].matches == 0);
  CHECK(rows[1].matches == 1);
  CHECK(rows[1].fraction == 0.5);
  CHECK(rows[2].matches == 2);
  CHECK(rows[3].matches == 4);
  CHECK(rows[3].fraction == 1.0);

  for (std::size_t n = 1; n <= 4; ++n) CHECK(compare_top_n(a, a, {n})[0].matches == n);

  const auto clamped = compare_top_n(a, b, {10});
  CHECK(clamped[0].clamped);
  CHECK(clamped[0].n == 4);
  CHECK(clamped[0].fraction == 1.0);
  CHECK_THROWS_AS(compare_top_n(a, b, {0}), InvalidArgument);
  CHECK_THROWS_AS(compare_top_n(a, list_of({{"w", 1}}), {1}), InvalidArgument);
}

TEST_CASE("coverage union") {
  const auto rig = rig_of(synthetic::random_corpus(31));
  CoverageSet previous;
  for (std::size_t n = 1; n <= rig.words() + 2; ++n) {
    const auto cov = coverage_union(rig, n);
    CHECK(std::is_sorted(cov.members.begin(), cov.members.end()));
    CHECK(cov.members.size() <= n * rig.categories());
    // Members are exactly the union of the per-category lists.
    std::set<std::string> u;
    for (std::size_t k = 0; k < rig.categories(); ++k) {
      const auto column = rank(rig, Criterion::rig_in(rig.category_names()[k])).top(n);
      CHECK(cov.per_category[k] == column);
      u.insert(column.begin(), column.end());
    }
    CHECK(std::vector<std::string>(u.begin(), u.end()) == cov.members);
    for (const auto& s : previous.members) CHECK(cov.contains(s));
    previous = cov;
  }
  CHECK_THROWS_AS(coverage_union(rig, 0), InvalidArgument);
}

TEST_CASE("coverage with one category or duplicated columns") {
  const auto single = Corpus::from_documents({{"1", "a b c", {"A"}, 0},
                                              {"2", "a b", {"A"}, 0}});
  const auto rig1 = rig_of(single);
  CHECK(coverage_union(rig1, 2).members.size() == 2);
  CHECK(coverage_union(rig1, 9).members.size() == 3);

  // A and B label the same documents, so their columns coincide.
  const auto twin = Corpus::from_documents({{"1", "a b c", {"A", "B"}, 0},
                                            {"2", "d e", {"C"}, 0},
                                            {"3", "a d", {"A", "B"}, 0}});
  const auto rig2 = rig_of(twin);
  const auto cov = coverage_union(rig2, 2);
  CHECK(cov.per_category[0] == cov.per_category[1]);
}

TEST_CASE("coverage min_rig is the weakest member's best selected RIG") {
  const auto rig = rig_of(synthetic::random_corpus(41));
  const auto cov = coverage_union(rig, 3);
  double expected = 2.0;
  for (const auto& s : cov.members) {
    double best = -1.0;
    for (std::size_t k = 0; k < rig.categories(); ++k) {
      const auto& list = cov.per_category[k];
      if (std::find(list.begin(), list.end(), s) == list.end()) continue;
      const auto j = static_cast<std::size_t>(
          std::find(rig.stems().begin(), rig.stems().end(), s) - rig.stems().begin());
      best = std::max(best, rig.at(j, k));
    }
    expected = std::min(expected, best);
  }
  CHECK(cov.min_rig == expected);
}

TEST_CASE("coverage_matches equals brute-force intersection") {
  for (std::uint64_t seed = 50; seed < 60; ++seed) {
    const auto rig = rig_of(synthetic::random_corpus(seed));
    const auto sums = rank(rig, Criterion::sum_rigs());
    for (std::size_t n : {1, 2, 5}) {
      const auto cov = coverage_union(rig, n);
      for (std::size_t m = 1; m <= rig.words(); ++m) {
        CHECK(coverage_matches(sums, m, cov) == oracle::intersection_size(sums.top(m), cov.members));
      }
      CHECK(coverage_matches(sums, rig.words(), cov) == cov.members.size());
    }
  }
  const auto rig = rig_of(synthetic::random_corpus(1));
  CHECK_THROWS_AS(coverage_matches(rank(rig, Criterion::sum_rigs()), 0, coverage_union(rig, 1)),
                  InvalidArgument);
}

TEST_CASE("sum histogram") {
  const auto rig = rig_of(synthetic::random_corpus(61));
  const auto n = rig.words();
  const auto h = sum_histogram(rig, n, 4);
  std::size_t total = 0;
  for (auto c : h.counts) total += c;
  CHECK(total == n);
  CHECK(h.hi == *std::max_element(rig.sums().begin(), rig.sums().end()));
  CHECK(h.min_sum() == *std::min_element(rig.sums().begin(), rig.sums().end()));
  CHECK_THROWS_AS(sum_histogram(rig, n, 1), InvalidArgument);
  CHECK_THROWS_AS(sum_histogram(rig, n + 1, 4), InvalidArgument);
  CHECK_THROWS_AS(sum_histogram(rig, 0, 4), InvalidArgument);

  const auto flat = Corpus::from_documents({{"1", "a b", {"A"}, 0}, {"2", "a b", {"B"}, 0}});
  const auto hf = sum_histogram(rig_of(flat), 2, 5);
  CHECK(hf.counts[0] == 2);
  CHECK(hf.width == 0.0);
}

TEST_CASE("thesaurus extraction") {
  const auto corpus = synthetic::random_corpus(71);
  const auto rig = rig_of(corpus);
  const auto full = extract_thesaurus(rig, rig.words());
  CHECK(full.list.items == rank(rig, Criterion::sum_rigs()).items);
  const auto t = extract_thesaurus(rig, 3);
  CHECK(t.list.size() == 3);
  CHECK(t.min_sum == t.list.items.back().score);
  CHECK(t.corpus_hash == corpus.content_hash());
  CHECK(t.manifest().find("criterion=sum_rigs\nm=3\nmin_S=") == 0);
  CHECK_THROWS_AS(extract_thesaurus(rig, 0), InvalidArgument);
  CHECK_THROWS_AS(extract_thesaurus(rig, rig.words() + 1), InvalidArgument);
}

TEST_CASE("planted topic words enter a 10K thesaurus") {
  const auto planted = synthetic::planted_corpus(7);
  const auto rig = build_rig_matrix(
      build_frequency_matrix(planted.corpus, build_dictionary(planted.corpus, 1)));
  const auto t = extract_thesaurus(rig, 10 * planted.categories.size());
  const auto top = t.list.top(t.m);
  for (const auto& s : planted.signature) {
    CHECK(std::find(top.begin(), top.end(), s) != top.end());
  }
}

TEST_CASE("frequency and RIG disagree on a ubiquitous word") {
  // u is in every document; v is exactly in the documents of category K.
  const auto corpus = Corpus::from_documents({{"1", "u v x", {"K"}, 0},
                                              {"2", "u v", {"K"}, 0},
                                              {"3", "u x", {"L"}, 0},
                                              {"4", "u", {"L"}, 0}});
  const auto fm = build_frequency_matrix(corpus, build_dictionary(corpus, 1));
  const auto rig = build_rig_matrix(fm);
  CHECK(rank(fm, Criterion::freq_in("K")).items[0].stem == "u");
  const auto by_rig = rank(rig, Criterion::rig_in("K")).top(3);
  const auto pos_u = std::find(by_rig.begin(), by_rig.end(), "u") - by_rig.begin();
  const auto pos_v = std::find(by_rig.begin(), by_rig.end(), "v") - by_rig.begin();
  CHECK(pos_v < pos_u);
}

TEST_CASE("ranked csv export") {
  const auto l = list_of({{"b,c", 0.5}, {"a", 0.25}});
  std::ostringstream out;
  write_ranked_csv(l, out, 6);
  CHECK(out.str() == "rank,stem,score\n1,\"b,c\",0.500000\n2,a,0.250000\n");
  std::ostringstream limited;
  write_ranked_csv(l, limited, 3, 1);
  CHECK(limited.str() == "rank,stem,score\n1,\"b,c\",0.500\n");
}
