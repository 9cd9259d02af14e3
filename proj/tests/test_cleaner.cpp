#include <doctest.h>

#include <regex>
#include <sstream>

#include "rigspace/cleaner.hpp"
#include "rigspace/error.hpp"

using namespace rigspace;

namespace {

// Longer than the default 300-byte window, so head and tail regions do not
// overlap.
const std::string kBody =
    "We measured the transmission loss of a double panel partition between "
    "two reverberant rooms and compared it with a statistical energy model. "
    "Agreement is within two decibels above the coincidence frequency, while "
    "below it the model overestimates the loss because of flanking paths. A "
    "simple correction based on measured radiation efficiency removes most of "
    "the discrepancy across the band of interest.";

std::vector<CleaningRule> rules_from(const std::string& text) {
  std::istringstream in(text);
  return parse_rules(in);
}

std::string cleaned(const RuleSet& rules, std::string text) {
  std::vector<std::size_t> matches;
  rules.clean(text, matches);
  return text;
}

std::string instance(const std::string& pattern) {
  return std::regex_replace(pattern, std::regex(R"(\{YEAR\})"), "2014");
}

Corpus corpus_of(std::vector<std::pair<std::string, std::string>> docs) {
  std::vector<Document> out;
  for (auto& [id, text] : docs) out.push_back({id, text, {"A"}, 0});
  return Corpus::from_documents(std::move(out));
}

}  // namespace

TEST_CASE("rule file parsing") {
  const auto rules = rules_from(
      "# comment\n\nliteral\ttail\tci\t(c) {YEAR} Elsevier Ltd.\n"
      "regex\thead\tcs\t^Abstract:\\s*\r\n");
  REQUIRE(rules.size() == 2);
  CHECK(rules[0].kind == RuleKind::kLiteral);
  CHECK(rules[0].anchor == Anchor::kTail);
  CHECK_FALSE(rules[0].case_sensitive);
  CHECK(rules[0].source_line == 3);
  CHECK(rules[1].pattern == "^Abstract:\\s*");
  CHECK(rules[1].case_sensitive);
  CHECK(rules_from(rules[0].to_line() + "\n")[0].pattern == rules[0].pattern);
}

TEST_CASE("malformed rule lines name the line") {
  CHECK_THROWS_WITH_AS(rules_from("literal\ttail\n"), doctest::Contains("line 1"), InputError);
  CHECK_THROWS_WITH_AS(rules_from("#\nglob\ttail\tci\tx\n"), doctest::Contains("line 2"),
                       InputError);
  CHECK_THROWS_AS(rules_from("literal\tmiddle\tci\tx\n"), InputError);
  CHECK_THROWS_AS(rules_from("literal\ttail\tyes\tx\n"), InputError);
  CHECK_THROWS_AS(load_rules("/nonexistent/rules.tsv"), InputError);
}

TEST_CASE("a regex that does not compile names the rule") {
  auto rules = rules_from("literal\ttail\tci\tok\nregex\ttail\tci\tbad([\n");
  CHECK_THROWS_WITH_AS(RuleSet(std::move(rules)), doctest::Contains("bad(["), InputError);
}

TEST_CASE("every shipped notice is removed exactly at head and tail") {
  const RuleSet rules(load_rules(RIGSPACE_RULES_FILE));
  REQUIRE(rules.size() > 0);
  for (const auto& rule : rules.rules()) {
    CAPTURE(rule.pattern);
    const auto notice = instance(rule.pattern);
    std::vector<std::size_t> matches;
    std::string text = rule.anchor == Anchor::kHead ? notice + " " + kBody : kBody + " " + notice;
    CHECK(rules.clean(text, matches));
    CHECK(text == kBody);
    // Outside both windows the same notice is part of the text.
    const std::string middle = kBody + " " + notice + " " + kBody;
    CHECK(cleaned(rules, middle) == middle);
  }
}

TEST_CASE("publisher names in the body survive") {
  const RuleSet rules(load_rules(RIGSPACE_RULES_FILE));
  const std::string text =
      "Data from Elsevier and Springer journals were compared with open "
      "repositories; all rights of reply were reserved for the authors.";
  CHECK(cleaned(rules, text) == text);
  CHECK(cleaned(rules, text + " (c) 2014 Elsevier Ltd. All rights reserved.") == text);
}

TEST_CASE("literal relaxations") {
  const RuleSet rules(rules_from("literal\ttail\tci\t(c) {YEAR} ACME Ltd.\n"
                                 "literal\ttail\tcs\tBioelectromagnetics\n"));
  CHECK(cleaned(rules, "text (C)  2014\nACME   ltd.") == "text");
  CHECK(cleaned(rules, "text (c) 1899 ACME Ltd.") == "text (c) 1899 ACME Ltd.");
  CHECK(cleaned(rules, "text Bioelectromagnetics.") == "text");
  CHECK(cleaned(rules, "text bioelectromagnetics") == "text bioelectromagnetics");
  CHECK(cleaned(rules, "text Bioelectromagneticsx") == "text Bioelectromagneticsx");
}

TEST_CASE("regex rules are taken as written") {
  const RuleSet rules(rules_from("regex\thead\tci\t^abstract:\\s*\n"));
  CHECK(cleaned(rules, "Abstract:  Sound waves.") == "Sound waves.");
}

TEST_CASE("window limits") {
  const RuleSet narrow(rules_from("literal\ttail\tci\tAll rights reserved\n"),
                       CleanerOptions{10, 16});
  CHECK(cleaned(narrow, "x All rights reserved.") == "x");
  const std::string far = "x All rights reserved. and then a longer ending";
  CHECK(cleaned(narrow, far) == far);
}

TEST_CASE("cleaning reaches a fixed point and is idempotent") {
  const RuleSet rules(load_rules(RIGSPACE_RULES_FILE));
  const std::string stacked =
      kBody + " (c) 2014 Elsevier Ltd. All rights reserved. Bioelectromagnetics";
  const auto once = cleaned(rules, stacked);
  CHECK(once == kBody);
  CHECK(cleaned(rules, once) == once);
}

TEST_CASE("unmatched text is byte-identical") {
  const RuleSet rules(load_rules(RIGSPACE_RULES_FILE));
  std::string text = "  spaced\ttext  with  no notice \n";
  const std::string original = text;
  std::vector<std::size_t> matches;
  CHECK_FALSE(rules.clean(text, matches));
  CHECK(text == original);
}

TEST_CASE("cleaned documents below the minimum are dropped") {
  const RuleSet rules(load_rules(RIGSPACE_RULES_FILE));
  std::string body;
  for (int i = 0; i < 25; ++i) body += (i ? " word" : "word") + std::to_string(i);
  const std::string notice =
      "(c) The Authors. Published by SPIE under a Creative Commons Attribution "
      "3.0 Unported License. Bioelectromagnetics";
  std::string keep;
  for (int i = 0; i < 35; ++i) keep += (i ? " kept" : "kept") + std::to_string(i);
  const auto corpus = corpus_of({{"short", body + " " + notice}, {"long", keep}});
  REQUIRE(corpus.document(0).token_count == 40);
  const auto result = clean_corpus(corpus, rules, 30);
  CHECK(result.corpus.size() == 1);
  CHECK(result.corpus.document(0).id == "long");
  CHECK(result.report.documents_modified == 1);
  CHECK(result.report.documents_dropped == 1);
  CHECK(result.report.documents == 2);
  std::size_t total = 0;
  for (auto m : result.report.matches) total += m;
  CHECK(total == 2);
  CHECK(result.report.csv().rfind("rule,matches\n", 0) == 0);
  CHECK(result.report.csv().find("\ntail (c) The Authors. Published by SPIE") != std::string::npos);
}

TEST_CASE("clean_corpus does not depend on input order of workers") {
  const RuleSet rules(load_rules(RIGSPACE_RULES_FILE));
  std::vector<std::pair<std::string, std::string>> docs;
  for (int i = 0; i < 200; ++i) {
    docs.push_back({"d" + std::to_string(i),
                    kBody + (i % 3 ? " (c) 2014 Elsevier Ltd. All rights reserved." : "")});
  }
  const auto a = clean_corpus(corpus_of(docs), rules, 30);
  const auto b = clean_corpus(corpus_of(docs), rules, 30);
  CHECK(a.corpus.content_hash() == b.corpus.content_hash());
  CHECK(a.report.matches == b.report.matches);
  CHECK(a.report.documents_modified == 133);
}

TEST_CASE("term document counts use stems") {
  const auto corpus = corpus_of({{"1", "published by Elsevier"},
                                 {"2", "nothing here"},
                                 {"3", "Publishing rights"}});
  const auto counts = count_term_documents(corpus, {"published", "Elsevier", "rights"});
  CHECK(counts.at("published") == 2);
  CHECK(counts.at("Elsevier") == 1);
  CHECK(counts.at("rights") == 1);
  CHECK_THROWS_AS(count_term_documents(corpus, {}), InvalidArgument);
}
