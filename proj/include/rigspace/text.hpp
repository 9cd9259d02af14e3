#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace rigspace {

/// Lowercased maximal runs of letters and digits, in text order.
///
/// ASCII letters and digits form tokens; every other ASCII byte separates
/// them, so hyphenated and slashed compounds split ("X-ray" -> "x", "ray").
/// Non-ASCII code points count as letters except for the Latin-1 symbol
/// block (U+00A0..U+00BF, U+00D7, U+00F7) and general punctuation
/// (U+2000..U+206F), which separate. Malformed UTF-8 bytes separate.
std::vector<std::string> tokenize(std::string_view text);

/// Name recorded in manifests for the stemmer below.
inline constexpr std::string_view kStemmerVariant = "porter-1980";

/// Porter (1980) suffix stripping. Tokens containing a digit or any
/// non-ASCII byte are returned unchanged.
std::string stem(std::string_view token);

/// Memoising wrapper around `stem`; one instance per worker thread.
class StemCache {
 public:
  const std::string& operator()(const std::string& token);
  std::size_t size() const { return cache_.size(); }

 private:
  std::unordered_map<std::string, std::string> cache_;
};

/// Sorted distinct stems of `text`.
std::vector<std::string> stem_set(std::string_view text, StemCache& cache);

}  // namespace rigspace
