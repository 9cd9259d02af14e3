#include <doctest.h>

#include <fstream>
#include <string>

#include "rigspace/text.hpp"

using namespace rigspace;

using Tokens = std::vector<std::string>;

TEST_CASE("tokenize") {
  CHECK(tokenize("").empty());
  CHECK(tokenize("X-ray diffraction (XRD)") == Tokens{"x", "ray", "diffraction", "xrd"});
  CHECK(tokenize("150MHz band") == Tokens{"150mhz", "band"});
  CHECK(tokenize("and/or a b.") == Tokens{"and", "or", "a", "b"});
  CHECK(tokenize("... --- !!!").empty());
  CHECK(tokenize("22dBm, 3.5") == Tokens{"22dbm", "3", "5"});
}

TEST_CASE("tokenize non-ASCII text") {
  CHECK(tokenize("caf\xC3\xA9 na\xC3\xAFve") == Tokens{"caf\xC3\xA9", "na\xC3\xAFve"});
  // Latin-1 symbols and general punctuation separate tokens.
  CHECK(tokenize("5\xC2\xB0""C") == Tokens{"5", "c"});
  CHECK(tokenize("a\xE2\x80\x94""b") == Tokens{"a", "b"});
  CHECK(tokenize("x\xC3\x97y") == Tokens{"x", "y"});
  // Malformed bytes separate.
  CHECK(tokenize("ab\xFF""cd") == Tokens{"ab", "cd"});
  CHECK(tokenize("ab\xC3") == Tokens{"ab"});
}

TEST_CASE("stem: word forms from published dictionaries") {
  CHECK(stem("acoustics") == "acoust");
  CHECK(stem("studies") == "studi");
  CHECK(stem("frequency") == "frequenc");
  CHECK(stem("noise") == "nois");
  CHECK(stem("dance") == "danc");
  CHECK(stem("species") == "speci");
  CHECK(stem("conclusion") == "conclus");
  CHECK(stem("xrd") == "xrd");
  CHECK(stem("150mhz") == "150mhz");
  CHECK(stem("22dbm") == "22dbm");
  CHECK(stem("caf\xC3\xA9s") == "caf\xC3\xA9s");
  CHECK(stem("a") == "a");
  CHECK(stem("s") == "s");
}

TEST_CASE("stem agrees with reference vectors") {
  std::ifstream in(RIGSPACE_TEST_DATA "/porter_vectors.tsv");
  REQUIRE(in);
  std::string line;
  std::size_t checked = 0, failed = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    REQUIRE(tab != std::string::npos);
    const auto word = line.substr(0, tab);
    const auto expected = line.substr(tab + 1);
    const auto got = stem(word);
    if (got != expected) {
      ++failed;
      if (failed <= 20) MESSAGE(word << ": got " << got << ", expected " << expected);
    }
    ++checked;
  }
  CHECK(checked > 5000);
  CHECK(failed == 0);
}

TEST_CASE("stem is idempotent on its own vocabulary fixed points") {
  for (const char* w : {"acoust", "danc", "studi", "xrd"}) CHECK(stem(stem(w)) == stem(w));
}

TEST_CASE("stem cache and stem sets") {
  StemCache cache;
  CHECK(cache("running") == "run");
  CHECK(cache("running") == "run");
  CHECK(cache.size() == 1);
  CHECK(stem_set("Dancers dance; the dance.", cache) == Tokens{"danc", "dancer", "the"});
  CHECK(stem_set("", cache).empty());
}
