#include <doctest.h>

#include <set>

#include "rigspace/synthetic.hpp"
#include "rigspace/text.hpp"

using namespace rigspace;

TEST_CASE("vocabulary words are their own stems and distinct") {
  const auto words = synthetic::vocabulary(500, 1);
  CHECK(words.size() == 500);
  CHECK(std::set<std::string>(words.begin(), words.end()).size() == 500);
  for (const auto& w : words) CHECK(stem(w) == w);
  CHECK(synthetic::vocabulary(500, 1) == words);
}

TEST_CASE("random corpora are reproducible and within bounds") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto a = synthetic::random_corpus(seed);
    CHECK(a.content_hash() == synthetic::random_corpus(seed).content_hash());
    CHECK(a.size() >= 2);
    CHECK(a.size() <= 50);
    CHECK(a.category_count() >= 1);
    CHECK(a.category_count() <= 5);
  }
}

TEST_CASE("planted corpus shape") {
  synthetic::PlantedOptions o;
  o.documents = 200;
  o.categories = 4;
  const auto p = synthetic::planted_corpus(3, o);
  CHECK(p.corpus.size() == 200);
  CHECK(p.categories.size() == 4);
  CHECK(p.signature.size() == 4);
  CHECK(p.ubiquitous.size() == o.ubiquitous);
  for (std::size_t i = 0; i < p.corpus.size(); ++i) {
    CHECK(p.corpus.document(i).categories.size() == 1);
  }
}
