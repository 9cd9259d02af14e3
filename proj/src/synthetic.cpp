#include "rigspace/synthetic.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_set>

#include "rigspace/error.hpp"
#include "rigspace/text.hpp"

namespace rigspace::synthetic {

namespace {

constexpr std::string_view kConsonants = "bdfgkmnprtvz";
constexpr std::string_view kVowels = "aiou";

std::vector<std::string> syllables() {
  std::vector<std::string> out;
  for (char c : kConsonants) {
    for (char v : kVowels) out.push_back(std::string{c, v});
  }
  return out;
}

std::size_t pick(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(std::mt19937_64& rng, double p) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

// Marks exactly round(rate * |pool|) members of `pool` in `present`.
void mark_share(std::mt19937_64& rng, std::vector<std::size_t> pool, double rate,
                std::vector<char>& present) {
  std::shuffle(pool.begin(), pool.end(), rng);
  const auto n = static_cast<std::size_t>(std::llround(rate * static_cast<double>(pool.size())));
  for (std::size_t i = 0; i < std::min(n, pool.size()); ++i) present[pool[i]] = 1;
}

Document make_doc(std::string id, std::vector<std::string> words,
                  std::vector<std::string> categories) {
  Document d;
  d.id = std::move(id);
  d.text = fmt::format("{}", fmt::join(words, " "));
  d.token_count = words.size();
  d.categories = std::move(categories);
  return d;
}

}  // namespace

std::vector<std::string> vocabulary(std::size_t n, std::uint64_t seed) {
  const auto syl = syllables();
  std::vector<std::string> pool;
  std::unordered_set<std::string> seen;
  auto consider = [&](std::string w) {
    if (stem(w) == w && seen.insert(w).second) pool.push_back(std::move(w));
  };
  for (std::size_t len = 2; pool.size() < n && len <= 4; ++len) {
    std::vector<std::size_t> digits(len, 0);
    while (true) {
      std::string w;
      for (auto d : digits) w += syl[d];
      consider(std::move(w));
      std::size_t i = 0;
      while (i < len && ++digits[i] == syl.size()) digits[i++] = 0;
      if (i == len) break;
    }
  }
  if (pool.size() < n) {
    throw InvalidArgument(fmt::format("vocabulary: at most {} words available", pool.size()));
  }
  std::mt19937_64 rng(seed);
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(n);
  return pool;
}

Corpus random_corpus(std::uint64_t seed, const RandomOptions& o) {
  std::mt19937_64 rng(seed);
  const auto m = pick(rng, 2, std::max<std::size_t>(2, o.max_documents));
  const auto k = pick(rng, 1, std::max<std::size_t>(1, o.max_categories));
  const auto n = pick(rng, 1, std::max<std::size_t>(1, o.max_words));
  const auto words = vocabulary(n, seed ^ 0x9e3779b97f4a7c15ULL);

  std::vector<double> rate(n);
  for (auto& r : rate) {
    const auto roll = pick(rng, 0, 9);
    r = roll == 0 ? 0.0 : roll == 1 ? 1.0 : std::uniform_real_distribution<double>()(rng);
  }
  // Category-dependent bias so that words carry information.
  std::vector<double> bias(n * k);
  for (auto& b : bias) b = std::uniform_real_distribution<double>(-0.4, 0.4)(rng);

  std::vector<Document> docs;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<std::string> cats;
    std::vector<std::size_t> idx;
    const auto labels = pick(rng, 1, std::min<std::size_t>(k, 3));
    std::vector<std::size_t> all(k);
    std::iota(all.begin(), all.end(), std::size_t{0});
    std::shuffle(all.begin(), all.end(), rng);
    for (std::size_t c = 0; c < labels; ++c) {
      idx.push_back(all[c]);
      cats.push_back(fmt::format("cat{}", all[c]));
    }
    std::vector<std::string> text;
    for (std::size_t j = 0; j < n; ++j) {
      double p = rate[j];
      if (p > 0.0 && p < 1.0) p = std::clamp(p + bias[j * k + idx.front()], 0.0, 1.0);
      if (!coin(rng, p)) continue;
      text.push_back(words[j]);
      if (coin(rng, 0.2)) text.push_back(words[j]);
    }
    std::shuffle(text.begin(), text.end(), rng);
    docs.push_back(make_doc(fmt::format("r{}", i), std::move(text), std::move(cats)));
  }
  return Corpus::from_documents(std::move(docs));
}

PlantedCorpus planted_corpus(std::uint64_t seed, const PlantedOptions& o) {
  if (o.categories == 0 || o.documents < o.categories) {
    throw InvalidArgument("planted_corpus: need at least one document per category");
  }
  std::mt19937_64 rng(seed);
  const std::size_t k = o.categories;
  const auto words =
      vocabulary(k + o.ubiquitous + k * o.topical_per_category, seed + 1);

  PlantedCorpus out;
  std::size_t next = 0;
  for (std::size_t c = 0; c < k; ++c) {
    out.categories.push_back(fmt::format("C{:02}", c));
    out.signature.push_back(words[next++]);
  }
  for (std::size_t u = 0; u < o.ubiquitous; ++u) out.ubiquitous.push_back(words[next++]);
  out.topical.resize(k);
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t t = 0; t < o.topical_per_category; ++t) {
      out.topical[c].push_back(words[next++]);
    }
  }

  const std::size_t m = o.documents;
  std::vector<std::size_t> label(m);
  for (std::size_t i = 0; i < m; ++i) label[i] = i % k;
  std::shuffle(label.begin(), label.end(), rng);
  std::vector<std::vector<std::size_t>> members(k), others(k);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t c = 0; c < k; ++c) (label[i] == c ? members : others)[c].push_back(i);
  }

  std::vector<std::vector<std::string>> text(m);
  auto add = [&](const std::vector<char>& present, const std::string& w) {
    for (std::size_t i = 0; i < m; ++i) {
      if (present[i]) text[i].push_back(w);
    }
  };
  for (std::size_t c = 0; c < k; ++c) {
    std::vector<char> present(m, 0);
    mark_share(rng, members[c], o.signature_inside, present);
    mark_share(rng, others[c], o.signature_outside, present);
    add(present, out.signature[c]);
  }
  for (const auto& w : out.ubiquitous) {
    std::vector<char> present(m, 0);
    for (std::size_t c = 0; c < k; ++c) mark_share(rng, members[c], o.ubiquitous_rate, present);
    add(present, w);
  }
  for (std::size_t c = 0; c < k; ++c) {
    for (const auto& w : out.topical[c]) {
      std::vector<char> present(m, 0);
      for (std::size_t i = 0; i < m; ++i) {
        present[i] = coin(rng, label[i] == c ? o.topical_inside : o.topical_outside);
      }
      add(present, w);
    }
  }

  std::vector<Document> docs;
  for (std::size_t i = 0; i < m; ++i) {
    std::shuffle(text[i].begin(), text[i].end(), rng);
    docs.push_back(make_doc(fmt::format("p{:05}", i), std::move(text[i]),
                            {out.categories[label[i]]}));
  }
  out.corpus = Corpus::from_documents(std::move(docs));
  return out;
}

Corpus scale_corpus(std::uint64_t seed, const ScaleOptions& o) {
  if (o.categories == 0 || o.vocabulary == 0 || o.min_length > o.max_length) {
    throw InvalidArgument("scale_corpus: invalid options");
  }
  std::mt19937_64 rng(seed);
  const auto words = vocabulary(o.vocabulary, seed + 1);

  std::vector<double> weights(o.vocabulary);
  for (std::size_t r = 0; r < weights.size(); ++r) {
    weights[r] = 1.0 / std::pow(static_cast<double>(r + 1), o.zipf_exponent);
  }
  std::discrete_distribution<std::size_t> zipf(weights.begin(), weights.end());

  // Topical words: a contiguous slice of the mid-frequency band per category.
  const std::size_t band = std::min(o.topical_words, o.vocabulary);
  std::vector<std::size_t> offset(o.categories);
  for (auto& off : offset) off = pick(rng, 0, o.vocabulary - band);

  std::vector<Document> docs;
  docs.reserve(o.documents);
  std::vector<std::string> text;
  for (std::size_t i = 0; i < o.documents; ++i) {
    const auto labels = pick(rng, 1, std::min<std::size_t>(3, o.categories));
    std::vector<std::size_t> idx;
    while (idx.size() < labels) {
      const auto c = pick(rng, 0, o.categories - 1);
      if (std::find(idx.begin(), idx.end(), c) == idx.end()) idx.push_back(c);
    }
    std::vector<std::string> cats;
    for (auto c : idx) cats.push_back(fmt::format("category_{:02}", c));

    const auto len = pick(rng, o.min_length, o.max_length);
    text.clear();
    for (std::size_t t = 0; t < len; ++t) {
      if (coin(rng, o.topical_share)) {
        const auto c = idx[pick(rng, 0, idx.size() - 1)];
        text.push_back(words[offset[c] + pick(rng, 0, band - 1)]);
      } else {
        text.push_back(words[zipf(rng)]);
      }
    }
    docs.push_back(make_doc(fmt::format("s{:06}", i), text, std::move(cats)));
  }
  return Corpus::from_documents(std::move(docs));
}

}  // namespace rigspace::synthetic
