#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "rigspace/corpus.hpp"

namespace rigspace::synthetic {

/// `n` distinct pseudo-words built from consonant-vowel syllables. Each
/// word is its own stem, so corpora built from them have a known dictionary.
std::vector<std::string> vocabulary(std::size_t n, std::uint64_t seed);

struct RandomOptions {
  std::size_t max_documents = 50;
  std::size_t max_categories = 5;
  std::size_t max_words = 30;
};

/// Small corpus with random sizes, multi-label documents and per-word
/// presence rates drawn from [0, 1] (including exact 0 and 1 now and then).
/// Words may repeat inside a document.
Corpus random_corpus(std::uint64_t seed, const RandomOptions& options = {});

struct PlantedOptions {
  std::size_t documents = 1000;
  std::size_t categories = 10;
  double signature_inside = 0.92;
  double signature_outside = 0.015;
  std::size_t ubiquitous = 5;
  double ubiquitous_rate = 0.98;
  std::size_t topical_per_category = 20;
  double topical_inside = 0.3;
  double topical_outside = 0.02;
};

/// Single-label corpus with one signature word per category (present in an
/// exact share of that category and of the rest), ubiquitous words present
/// in the same exact share of every category, and noisier topical words.
struct PlantedCorpus {
  Corpus corpus;
  std::vector<std::string> categories;
  std::vector<std::string> signature;  // by category
  std::vector<std::string> ubiquitous;
  std::vector<std::vector<std::string>> topical;  // by category
};

PlantedCorpus planted_corpus(std::uint64_t seed, const PlantedOptions& options = {});

struct ScaleOptions {
  std::size_t documents = 100000;
  std::size_t categories = 50;
  std::size_t vocabulary = 60000;
  std::size_t min_length = 60;
  std::size_t max_length = 140;
  double zipf_exponent = 1.0;
  /// Share of tokens drawn from the document's category-specific words.
  double topical_share = 0.2;
  std::size_t topical_words = 300;
};

/// Zipf-distributed text with per-category topical words; 1 to 3 labels
/// per document.
Corpus scale_corpus(std::uint64_t seed, const ScaleOptions& options = {});

}  // namespace rigspace::synthetic
