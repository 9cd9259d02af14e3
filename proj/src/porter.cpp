// Porter's 1980 suffix-stripping algorithm, steps 1a through 5b, without the
// later departures of the reference C implementation.

#include <algorithm>
#include <array>
#include <string>

#include "rigspace/text.hpp"

namespace rigspace {

namespace {

class PorterWord {
 public:
  explicit PorterWord(std::string w) : b_(std::move(w)) {}

  std::string take() && { return std::move(b_); }

  void run() {
    step1a();
    step1b();
    step1c();
    step2();
    step3();
    step4();
    step5a();
    step5b();
  }

 private:
  struct Rule {
    std::string_view suffix;
    std::string_view replacement;
  };

  bool is_consonant(std::size_t i) const {
    switch (b_[i]) {
      case 'a': case 'e': case 'i': case 'o': case 'u':
        return false;
      case 'y':
        return i == 0 || !is_consonant(i - 1);
      default:
        return true;
    }
  }

  // Number of VC sequences in b_[0, len).
  int measure(std::size_t len) const {
    int m = 0;
    bool prev_vowel = false;
    for (std::size_t i = 0; i < len; ++i) {
      const bool c = is_consonant(i);
      if (c && prev_vowel) ++m;
      prev_vowel = !c;
    }
    return m;
  }

  bool has_vowel(std::size_t len) const {
    for (std::size_t i = 0; i < len; ++i) {
      if (!is_consonant(i)) return true;
    }
    return false;
  }

  // *d: b_[0, len) ends with a double consonant.
  bool ends_double_consonant(std::size_t len) const {
    return len >= 2 && b_[len - 1] == b_[len - 2] && is_consonant(len - 1);
  }

  // *o: b_[0, len) ends consonant-vowel-consonant, last not w, x or y.
  bool ends_cvc(std::size_t len) const {
    if (len < 3) return false;
    if (!is_consonant(len - 3) || is_consonant(len - 2) || !is_consonant(len - 1)) {
      return false;
    }
    const char last = b_[len - 1];
    return last != 'w' && last != 'x' && last != 'y';
  }

  bool ends_with(std::string_view s) const {
    return b_.size() >= s.size() &&
           std::string_view(b_).substr(b_.size() - s.size()) == s;
  }

  void replace_suffix(std::size_t suffix_len, std::string_view replacement) {
    b_.resize(b_.size() - suffix_len);
    b_.append(replacement);
  }

  // The first rule whose suffix matches decides; its replacement applies only
  // when the remaining stem has measure > min_measure.
  template <std::size_t N>
  void apply_rules(const std::array<Rule, N>& rules, int min_measure) {
    for (const auto& r : rules) {
      if (!ends_with(r.suffix)) continue;
      if (measure(b_.size() - r.suffix.size()) > min_measure) {
        replace_suffix(r.suffix.size(), r.replacement);
      }
      return;
    }
  }

  void step1a() {
    if (ends_with("sses")) {
      replace_suffix(4, "ss");
    } else if (ends_with("ies")) {
      replace_suffix(3, "i");
    } else if (ends_with("ss")) {
      // unchanged
    } else if (ends_with("s")) {
      replace_suffix(1, "");
    }
  }

  void step1b() {
    if (ends_with("eed")) {
      if (measure(b_.size() - 3) > 0) replace_suffix(3, "ee");
      return;
    }
    std::size_t cut = 0;
    if (ends_with("ed") && has_vowel(b_.size() - 2)) {
      cut = 2;
    } else if (ends_with("ing") && has_vowel(b_.size() - 3)) {
      cut = 3;
    }
    if (cut == 0) return;
    replace_suffix(cut, "");
    if (ends_with("at") || ends_with("bl") || ends_with("iz")) {
      b_.push_back('e');
    } else if (ends_double_consonant(b_.size())) {
      const char last = b_.back();
      if (last != 'l' && last != 's' && last != 'z') b_.pop_back();
    } else if (measure(b_.size()) == 1 && ends_cvc(b_.size())) {
      b_.push_back('e');
    }
  }

  void step1c() {
    if (ends_with("y") && has_vowel(b_.size() - 1)) b_.back() = 'i';
  }

  void step2() {
    static constexpr std::array<Rule, 20> kRules{{
        {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"},
        {"anci", "ance"},   {"izer", "ize"},    {"abli", "able"},
        {"alli", "al"},     {"entli", "ent"},   {"eli", "e"},
        {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
        {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"},
        {"fulness", "ful"}, {"ousness", "ous"}, {"aliti", "al"},
        {"iviti", "ive"},   {"biliti", "ble"},
    }};
    apply_rules(kRules, 0);
  }

  void step3() {
    static constexpr std::array<Rule, 7> kRules{{
        {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
        {"ical", "ic"},  {"ful", ""},   {"ness", ""},
    }};
    apply_rules(kRules, 0);
  }

  void step4() {
    static constexpr std::array<std::string_view, 19> kSuffixes{
        "al",   "ance", "ence", "er",  "ic",  "able", "ible",
        "ant",  "ement", "ment", "ent", "ion", "ou",   "ism",
        "ate",  "iti",  "ous",  "ive", "ize"};
    for (auto suffix : kSuffixes) {
      if (!ends_with(suffix)) continue;
      const std::size_t stem_len = b_.size() - suffix.size();
      bool ok = measure(stem_len) > 1;
      if (ok && suffix == "ion") {
        ok = stem_len > 0 && (b_[stem_len - 1] == 's' || b_[stem_len - 1] == 't');
      }
      if (ok) b_.resize(stem_len);
      return;
    }
  }

  void step5a() {
    if (!ends_with("e")) return;
    const std::size_t stem_len = b_.size() - 1;
    const int m = measure(stem_len);
    if (m > 1 || (m == 1 && !ends_cvc(stem_len))) b_.pop_back();
  }

  void step5b() {
    if (measure(b_.size()) > 1 && ends_double_consonant(b_.size()) &&
        b_.back() == 'l') {
      b_.pop_back();
    }
  }

  std::string b_;
};

}  // namespace

std::string stem(std::string_view token) {
  std::string word(token);
  for (char& c : word) {
    const auto u = static_cast<unsigned char>(c);
    if (u >= 0x80 || (u >= '0' && u <= '9')) return std::string(token);
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + 32);
  }
  if (word.empty()) return word;
  PorterWord w(word);
  w.run();
  auto out = std::move(w).take();
  // Step 1a strips the lone token "s" to nothing; keep the token instead.
  return out.empty() ? word : out;
}

}  // namespace rigspace
