#include "rigspace/pipeline.hpp"

#include <fmt/format.h>
#include <tbb/global_control.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "rigspace/cleaner.hpp"
#include "rigspace/corpus.hpp"
#include "rigspace/csv.hpp"
#include "rigspace/dictionary.hpp"
#include "rigspace/freq_matrix.hpp"
#include "rigspace/hash.hpp"
#include "rigspace/ranking.hpp"
#include "rigspace/report.hpp"
#include "rigspace/rig.hpp"
#include "rigspace/text.hpp"

namespace fs = std::filesystem;

namespace rigspace {

std::string_view to_string(Stage stage) {
  switch (stage) {
    case Stage::kConfig: return "config";
    case Stage::kIngest: return "ingest";
    case Stage::kClean: return "clean";
    case Stage::kDict: return "dict";
    case Stage::kFreq: return "freq";
    case Stage::kRig: return "rig";
    case Stage::kRank: return "rank";
    case Stage::kThesaurus: return "thesaurus";
    case Stage::kCoverage: return "coverage";
    case Stage::kCompare: return "compare";
    case Stage::kReport: return "report";
    case Stage::kIo: return "io";
  }
  return "unknown";
}

int exit_code(Stage stage) {
  switch (stage) {
    case Stage::kConfig: return 2;
    case Stage::kIngest: return 10;
    case Stage::kClean: return 11;
    case Stage::kDict: return 12;
    case Stage::kFreq: return 13;
    case Stage::kRig: return 14;
    case Stage::kRank: return 15;
    case Stage::kThesaurus: return 16;
    case Stage::kCoverage: return 17;
    case Stage::kCompare: return 18;
    case Stage::kReport: return 19;
    case Stage::kIo: return 20;
  }
  return 1;
}

StageError::StageError(Stage stage, const std::string& message)
    : Error(fmt::format("[{}] {}", to_string(stage), message)), stage_(stage) {}

// ---------------------------------------------------------------- config

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::size_t parse_size(std::string_view key, std::string_view value) {
  std::size_t out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size() || value.empty()) {
    throw InvalidArgument(
        fmt::format("config key \"{}\": \"{}\" is not a non-negative integer", key, value));
  }
  return out;
}

std::vector<std::string_view> split_list(std::string_view value) {
  std::vector<std::string_view> out;
  while (!value.empty()) {
    const auto comma = value.find(',');
    auto item = trim(value.substr(0, comma));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string_view::npos) break;
    value.remove_prefix(comma + 1);
  }
  return out;
}

std::vector<std::size_t> parse_size_list(std::string_view key, std::string_view value) {
  std::vector<std::size_t> out;
  for (auto item : split_list(value)) out.push_back(parse_size(key, item));
  if (out.empty()) throw InvalidArgument(fmt::format("config key \"{}\" is empty", key));
  return out;
}

std::string join_sizes(const std::vector<std::size_t>& v) {
  return fmt::format("{}", fmt::join(v, ","));
}

}  // namespace

void set_config_value(PipelineConfig& c, std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "input") c.input = std::string(value);
  else if (key == "rules") c.rules = std::string(value);
  else if (key == "out") c.out = std::string(value);
  else if (key == "min_tokens") c.min_tokens = parse_size(key, value);
  else if (key == "max_tokens") c.max_tokens = parse_size(key, value);
  else if (key == "pre_min_tokens") c.pre_min_tokens = parse_size(key, value);
  else if (key == "threshold") c.threshold = parse_size(key, value);
  else if (key == "thesaurus_size") c.thesaurus_size = parse_size(key, value);
  else if (key == "top_n") c.top_n = parse_size(key, value);
  else if (key == "precision") c.precision = static_cast<int>(parse_size(key, value));
  else if (key == "window") c.window = parse_size(key, value);
  else if (key == "histogram_bins") c.histogram_bins = parse_size(key, value);
  else if (key == "jobs") c.jobs = parse_size(key, value);
  else if (key == "coverage_ns") c.coverage_ns = parse_size_list(key, value);
  else if (key == "compare_ns") c.compare_ns = parse_size_list(key, value);
  else if (key == "histogram_ms") c.histogram_ms = parse_size_list(key, value);
  else if (key == "audit_terms") {
    c.audit_terms.clear();
    for (auto t : split_list(value)) c.audit_terms.emplace_back(t);
  } else if (key == "criteria") {
    c.criteria.clear();
    for (auto t : split_list(value)) c.criteria.emplace_back(t);
  } else if (key == "stemmer") c.stemmer = std::string(value);
  else throw InvalidArgument(fmt::format("unknown config key \"{}\"", key));
}

PipelineConfig parse_config(std::istream& in, PipelineConfig base) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw InvalidArgument(fmt::format("config line {}: expected key=value", line_no));
    }
    try {
      set_config_value(base, trim(view.substr(0, eq)), view.substr(eq + 1));
    } catch (const InvalidArgument& e) {
      throw InvalidArgument(fmt::format("config line {}: {}", line_no, e.what()));
    }
  }
  return base;
}

PipelineConfig load_config(const fs::path& path, PipelineConfig base) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument(fmt::format("cannot open config file {}", path.string()));
  auto c = parse_config(in, base);
  // Relative paths set in a config file are taken relative to the file.
  const auto dir = path.parent_path();
  for (auto [p, before] : {std::pair{&c.input, &base.input}, std::pair{&c.rules, &base.rules},
                           std::pair{&c.out, &base.out}}) {
    if (*p != *before && !p->empty() && p->is_relative()) *p = dir / *p;
  }
  return c;
}

void PipelineConfig::validate() const {
  auto positive = [](std::string_view key, std::size_t v) {
    if (v == 0) throw InvalidArgument(fmt::format("config: {} must be positive", key));
  };
  positive("min_tokens", min_tokens);
  positive("max_tokens", max_tokens);
  positive("threshold", threshold);
  positive("thesaurus_size", thesaurus_size);
  positive("top_n", top_n);
  positive("window", window);
  positive("histogram_bins", histogram_bins);
  if (precision <= 0 || precision > 17) {
    throw InvalidArgument("config: precision must lie in [1, 17]");
  }
  if (min_tokens > max_tokens || ingest_min_tokens() > max_tokens) {
    throw InvalidArgument(fmt::format("config: min_tokens ({}) exceeds max_tokens ({})",
                                      std::max(min_tokens, ingest_min_tokens()),
                                      max_tokens));
  }
  for (const auto* list : {&coverage_ns, &compare_ns, &histogram_ms}) {
    for (auto n : *list) positive("list entry", n);
  }
  if (histogram_bins < 2) throw InvalidArgument("config: histogram_bins must be >= 2");
  if (stemmer != kStemmerVariant) {
    throw InvalidArgument(fmt::format("config: unsupported stemmer \"{}\" (available: {})",
                                      stemmer, kStemmerVariant));
  }
  for (const auto& c : criteria) Criterion::parse(c);
  if (input.empty()) throw InvalidArgument("config: input is not set");
  if (out.empty()) throw InvalidArgument("config: out is not set");
}

std::string PipelineConfig::to_text() const {
  return fmt::format(
      "input={}\nrules={}\nout={}\nmin_tokens={}\nmax_tokens={}\npre_min_tokens={}\n"
      "threshold={}\nthesaurus_size={}\ntop_n={}\nprecision={}\nwindow={}\n"
      "histogram_bins={}\ncoverage_ns={}\ncompare_ns={}\nhistogram_ms={}\n"
      "audit_terms={}\ncriteria={}\nstemmer={}\n",
      input.string(), rules.string(), out.string(), min_tokens, max_tokens,
      pre_min_tokens, threshold, thesaurus_size, top_n, precision, window,
      histogram_bins, join_sizes(coverage_ns), join_sizes(compare_ns),
      join_sizes(histogram_ms), fmt::join(audit_terms, ","), fmt::join(criteria, ","),
      stemmer);
}

PipelineTargets PipelineTargets::all() { return up_to(Stage::kReport); }

PipelineTargets PipelineTargets::up_to(Stage stage) {
  PipelineTargets t;
  switch (stage) {
    case Stage::kReport: t.report = true; [[fallthrough]];
    case Stage::kCompare: t.compare = true; [[fallthrough]];
    case Stage::kCoverage: t.coverage = true; [[fallthrough]];
    case Stage::kThesaurus: t.thesaurus = true; [[fallthrough]];
    case Stage::kRank: t.rank = true; [[fallthrough]];
    case Stage::kRig: t.rig = true; [[fallthrough]];
    case Stage::kFreq: t.freq = true; [[fallthrough]];
    case Stage::kDict: t.dict = true; [[fallthrough]];
    case Stage::kClean: t.clean = true; [[fallthrough]];
    default: break;
  }
  return t;
}

// -------------------------------------------------------------- artifacts

namespace {

using Manifest = std::map<std::string, std::string>;

std::string manifest_text(const Manifest& m) {
  std::string s;
  for (const auto& [k, v] : m) s += k + "=" + v + "\n";
  return s;
}

std::optional<Manifest> read_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  Manifest m;
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) return std::nullopt;
    m[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return m;
}

std::vector<std::size_t> parse_counts(const std::string& text) {
  std::vector<std::size_t> out;
  for (auto item : split_list(text)) out.push_back(parse_size("counts", item));
  return out;
}

// File-system safe, unique per category: "<index>_<sanitized name>".
std::string category_file_stem(std::size_t k, std::string_view name) {
  std::string s = fmt::format("{:03}_", k);
  for (char ch : name) {
    const bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
                    (ch >= '0' && ch <= '9') || ch == '-' || ch == '.';
    s += ok ? ch : '_';
  }
  return s;
}

class Run {
 public:
  Run(const PipelineConfig& config, std::ostream& log) : config_(config), log_(log) {}

  PipelineResult execute(const PipelineTargets& t) {
    const bool need_rank = t.rank || t.thesaurus || t.coverage || t.compare || t.report;
    const bool need_rig = t.rig || need_rank;
    const bool need_freq = t.freq || need_rig;
    stage(Stage::kClean, [&] { clean_stage(); });
    if (t.dict || need_freq) stage(Stage::kDict, [&] { dict_stage(); });
    if (need_freq) stage(Stage::kFreq, [&] { freq_stage(); });
    if (need_rig) stage(Stage::kRig, [&] { rig_stage(); });
    if (need_rank) stage(Stage::kRank, [&] { rank_stage(); });
    if (t.thesaurus) stage(Stage::kThesaurus, [&] { thesaurus_stage(); });
    if (t.coverage) stage(Stage::kCoverage, [&] { coverage_stage(); });
    if (t.compare) stage(Stage::kCompare, [&] { compare_stage(); });
    if (t.report) stage(Stage::kReport, [&] { report_stage(); });
    return std::move(result_);
  }

  PipelineResult ingest_only() {
    stage(Stage::kIngest, [&] {
      auto ingested = do_ingest();
      write("ingest_report.csv", ingested.report.counts_csv());
      write_stream("corpus.ingested.jsonl",
                   [&](std::ostream& o) { write_jsonl(ingested.corpus, o); });
    });
    return std::move(result_);
  }

 private:
  template <class F>
  void stage(Stage s, F&& body) {
    try {
      body();
    } catch (const StageError&) {
      throw;
    } catch (const std::exception& e) {
      throw StageError(s, e.what());
    }
  }

  fs::path path(const fs::path& rel) const { return config_.out / rel; }

  // Writes through a temporary file so a crash never leaves a truncated
  // artifact under its final name. Returns the content hash.
  std::string write_stream(const fs::path& rel,
                           const std::function<void(std::ostream&)>& body) {
    const auto target = path(rel);
    const auto tmp = fs::path(target.string() + ".tmp");
    try {
      fs::create_directories(target.parent_path());
      {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open for writing");
        body(out);
        out.flush();
        if (!out) throw Error("write failed");
      }
      fs::rename(tmp, target);
    } catch (const std::exception& e) {
      throw StageError(Stage::kIo, fmt::format("{}: {}", target.string(), e.what()));
    }
    result_.artifacts.push_back(rel);
    return sha256_file(target);
  }

  std::string write(const fs::path& rel, const std::string& content) {
    return write_stream(rel, [&](std::ostream& o) { o << content; });
  }

  void write_manifest(const std::string& stage_name, const Manifest& m) {
    write(fs::path("manifests") / (stage_name + ".manifest"), manifest_text(m));
  }

  // Cached outputs are valid when the key matches and every recorded
  // output still hashes to its recorded value.
  std::optional<Manifest> cached(const std::string& stage_name, const std::string& key) {
    auto m = read_manifest(path(fs::path("manifests") / (stage_name + ".manifest")));
    if (!m || (*m)["key"] != key) return std::nullopt;
    for (const auto& [k, v] : *m) {
      if (k.rfind("output:", 0) != 0) continue;
      const auto file = path(k.substr(7));
      if (!fs::exists(file) || sha256_file(file) != v) return std::nullopt;
    }
    for (const auto& [k, v] : *m) {
      if (k.rfind("output:", 0) == 0) result_.artifacts.emplace_back(k.substr(7));
    }
    result_.artifacts.push_back(fs::path("manifests") / (stage_name + ".manifest"));
    result_.reused_stages.push_back(stage_name);
    log_ << fmt::format("{}: reusing cached outputs\n", stage_name);
    return m;
  }

  void warn(const std::string& w) {
    log_ << "warning: " << w << "\n";
    result_.warnings.push_back(w);
  }

  IngestResult do_ingest() {
    IngestOptions opts;
    opts.min_tokens = config_.ingest_min_tokens();
    opts.max_tokens = config_.max_tokens;
    try {
      auto r = ingest(config_.input, opts);
      log_ << r.report.summary();
      return r;
    } catch (const std::exception& e) {
      throw StageError(Stage::kIngest, e.what());
    }
  }

  // ---- clean (ingest included)

  std::string clean_key() {
    Sha256 h;
    h.update_field("clean");
    try {
      h.update_field(sha256_file(config_.input));
    } catch (const std::exception& e) {
      throw StageError(Stage::kIngest, e.what());
    }
    if (config_.rules.empty()) {
      h.update_field("no-rules");
    } else {
      try {
        h.update_field(sha256_file(config_.rules));
      } catch (const std::exception& e) {
        throw StageError(Stage::kClean, e.what());
      }
    }
    h.update_field(fmt::format("{},{},{},{},{}", config_.ingest_min_tokens(),
                               config_.min_tokens, config_.max_tokens, config_.window,
                               CleanerOptions{}.max_passes));
    h.update_field(config_.stemmer);
    h.update_field(fmt::format("{}", fmt::join(config_.audit_terms, "\n")));
    return h.hex_digest();
  }

  void clean_stage() {
    key_clean_ = clean_key();
    if (auto m = cached("clean", key_clean_)) {
      corpus_hash_ = (*m)["corpus_hash"];
      return;
    }
    auto ingested = do_ingest();
    std::vector<CleaningRule> rules;
    if (!config_.rules.empty()) rules = load_rules(config_.rules);
    CleanerOptions opts;
    opts.window = config_.window;
    RuleSet rule_set(std::move(rules), opts);
    auto cleaned = clean_corpus(ingested.corpus, rule_set, config_.min_tokens);
    log_ << cleaned.report.summary();
    if (cleaned.corpus.size() == 0) {
      throw StageError(Stage::kClean, "no documents left after cleaning");
    }

    Manifest m;
    m["key"] = key_clean_;
    m["output:ingest_report.csv"] = write("ingest_report.csv", ingested.report.counts_csv());
    m["output:cleaning_report.csv"] = write("cleaning_report.csv", cleaned.report.csv());
    m["output:corpus.clean.jsonl"] = write_stream(
        "corpus.clean.jsonl", [&](std::ostream& o) { write_jsonl(cleaned.corpus, o); });
    if (!config_.audit_terms.empty()) {
      const auto before = count_term_documents(ingested.corpus, config_.audit_terms);
      const auto after = count_term_documents(cleaned.corpus, config_.audit_terms);
      std::string audit = "term,stem,before,after\n";
      for (const auto& term : config_.audit_terms) {
        audit += fmt::format("{},{},{},{}\n", csv::escape(term), csv::escape(stem(term)),
                             before.at(term), after.at(term));
      }
      m["output:report/cleaning_audit.csv"] = write("report/cleaning_audit.csv", audit);
    }
    corpus_hash_ = cleaned.corpus.content_hash();
    m["corpus_hash"] = corpus_hash_;
    m["documents"] = std::to_string(cleaned.corpus.size());
    m["documents_modified"] = std::to_string(cleaned.report.documents_modified);
    m["documents_dropped"] = std::to_string(cleaned.report.documents_dropped +
                                            cleaned.report.documents_short_unmodified);
    m["rules"] = std::to_string(rule_set.size());
    m["params"] = fmt::format("pre_min_tokens={};min_tokens={};max_tokens={};window={}",
                              config_.ingest_min_tokens(), config_.min_tokens,
                              config_.max_tokens, config_.window);
    write_manifest("clean", m);
    corpus_ = std::move(cleaned.corpus);
  }

  const Corpus& corpus() {
    if (!corpus_) {
      IngestOptions all;
      all.min_tokens = 0;
      all.max_tokens = std::numeric_limits<std::size_t>::max();
      auto r = ingest(path("corpus.clean.jsonl"), all);
      if (r.corpus.content_hash() != corpus_hash_) {
        throw ConsistencyError("corpus.clean.jsonl does not match its manifest");
      }
      corpus_ = std::move(r.corpus);
    }
    return *corpus_;
  }

  // ---- dict

  void dict_stage() {
    Sha256 h;
    h.update_field("dict").update_field(key_clean_);
    h.update_field(std::to_string(config_.threshold)).update_field(config_.stemmer);
    key_dict_ = h.hex_digest();
    if (cached("dict", key_dict_)) return;

    dict_ = build_dictionary(corpus(), config_.threshold);
    log_ << fmt::format("dict: {} stems with document frequency >= {}\n", dict_->size(),
                        config_.threshold);
    if (dict_->size() == 0) {
      throw StageError(Stage::kDict,
                       fmt::format("no stem reaches the threshold {}", config_.threshold));
    }
    Manifest m;
    m["key"] = key_dict_;
    m["output:dictionary.csv"] = write_stream(
        "dictionary.csv", [&](std::ostream& o) { write_dictionary_csv(*dict_, o); });
    m["threshold"] = std::to_string(config_.threshold);
    m["stemmer"] = config_.stemmer;
    m["words"] = std::to_string(dict_->size());
    m["corpus_hash"] = corpus_hash_;
    write_manifest("dict", m);
  }

  const Dictionary& dictionary() {
    if (!dict_) {
      std::ifstream in(path("dictionary.csv"));
      dict_ = read_dictionary_csv(in, config_.threshold);
    }
    return *dict_;
  }

  // ---- freq

  void freq_stage() {
    Sha256 h;
    h.update_field("freq").update_field(key_dict_);
    const auto key = h.hex_digest();
    if (auto m = cached("freq", key)) {
      std::ifstream in(path("frequency_matrix.csv"));
      fm_ = read_frequency_csv(in, parse_counts((*m)["category_doc_counts"]),
                               parse_size("documents", (*m)["documents"]), corpus_hash_);
      return;
    }
    fm_ = build_frequency_matrix(corpus(), dictionary());
    log_ << fmt::format("freq: {} x {} matrix, {} non-zero cells\n", fm_->words(),
                        fm_->categories(), fm_->nonzeros());
    Manifest m;
    m["key"] = key;
    m["output:frequency_matrix.csv"] = write_stream(
        "frequency_matrix.csv", [&](std::ostream& o) { write_frequency_csv(*fm_, o); });
    m["category_doc_counts"] = join_sizes(fm_->col_doc_counts());
    m["documents"] = std::to_string(fm_->documents());
    m["corpus_hash"] = corpus_hash_;
    write_manifest("freq", m);
  }

  // ---- rig and downstream (always recomputed)

  void rig_stage() {
    rig_ = build_rig_matrix(*fm_);
    for (const auto& w : rig_->warnings()) warn(w);
    Manifest m;
    m["output:rig_matrix.csv"] = write_stream(
        "rig_matrix.csv", [&](std::ostream& o) { write_rig_csv(*rig_, o); });
    m["corpus_hash"] = corpus_hash_;
    m["degenerate_categories"] = std::to_string(rig_->warnings().size());
    write_manifest("rig", m);
  }

  void rank_stage() {
    sum_list_ = rank(*rig_, Criterion::sum_rigs());
    max_list_ = rank(*rig_, Criterion::max_rigs());
    Manifest m;
    m["output:ranking_sum.csv"] = write_stream("ranking_sum.csv", [&](std::ostream& o) {
      write_ranked_csv(*sum_list_, o, config_.precision);
    });
    m["output:ranking_max.csv"] = write_stream("ranking_max.csv", [&](std::ostream& o) {
      write_ranked_csv(*max_list_, o, config_.precision);
    });
    for (const auto& text : config_.criteria) {
      const auto c = Criterion::parse(text);
      const auto list = c.kind == Criterion::Kind::kFreqInCategory ? rank(*fm_, c)
                                                                   : rank(*rig_, c);
      const auto rel = fs::path("report") / "rankings" /
                       (category_file_stem(extra_rankings_++, c.to_string()) + ".csv");
      m["output:" + rel.generic_string()] = write_stream(
          rel, [&](std::ostream& o) { write_ranked_csv(list, o, config_.precision); });
    }
    m["corpus_hash"] = corpus_hash_;
    write_manifest("rank", m);
  }

  std::size_t clamp_to_words(std::string_view what, std::size_t n) {
    if (n > rig_->words()) {
      warn(fmt::format("{} {} clamped to dictionary size {}", what, n, rig_->words()));
      return rig_->words();
    }
    return n;
  }

  void thesaurus_stage() {
    const auto m = clamp_to_words("thesaurus_size", config_.thesaurus_size);
    auto t = extract_thesaurus(*rig_, m);
    write_stream("thesaurus.csv",
                 [&](std::ostream& o) { write_ranked_csv(t.list, o, config_.precision); });
    write("manifests/thesaurus.manifest", t.manifest());
  }

  void coverage_stage() {
    const auto m = std::min(config_.thesaurus_size, rig_->words());
    std::string table = fmt::format("# T_m with m={}\nn,size,min_rig,matches\n", m);
    auto ns = config_.coverage_ns;
    std::sort(ns.begin(), ns.end());
    for (auto n : ns) {
      const auto cov = coverage_union(*rig_, n);
      table += fmt::format("{},{},{:.{}f},{}\n", n, cov.members.size(), cov.min_rig,
                           config_.precision, coverage_matches(*sum_list_, m, cov));
      std::string members = fmt::format("# n={}\n# size={}\n# min_rig={:.{}f}\n", n,
                                        cov.members.size(), cov.min_rig, config_.precision);
      for (const auto& s : cov.members) members += s + "\n";
      write(fs::path("report") / "coverage" / fmt::format("X_{}.txt", n), members);
    }
    write("report/coverage.csv", table);
  }

  void compare_stage() {
    auto rows = compare_top_n(*sum_list_, *max_list_, config_.compare_ns);
    for (const auto& r : rows) {
      if (r.clamped) warn(fmt::format("compare n {} clamped to {}", r.requested, r.n));
    }
    write("report/compare_sum_max.csv", compare_csv(rows, config_.precision));
  }

  void report_stage() {
    const int p = config_.precision;
    for (const char* dir : {"categories", "wordclouds", "histograms"}) {
      std::error_code ec;
      fs::remove_all(path(fs::path("report") / dir), ec);
    }
    for (std::size_t k = 0; k < rig_->categories(); ++k) {
      const auto& name = rig_->category_names()[k];
      const auto file = category_file_stem(k, name);
      auto table = category_table(*rig_, name, config_.top_n);
      for (const auto& w : table.warnings) warn(fmt::format("{}: {}", name, w));
      write(fs::path("report") / "categories" / (file + ".csv"), table.csv(p));
      write(fs::path("report") / "wordclouds" / (file + ".rig.tsv"),
            wordcloud_tsv(wordcloud_weights(*rig_, name, config_.top_n), p));

      const auto freq = rank(*fm_, Criterion::freq_in(name));
      WordWeights fw;
      for (std::size_t i = 0; i < std::min(config_.top_n, freq.size()); ++i) {
        fw.items.push_back({freq.items[i].stem, freq.items[i].score});
      }
      write(fs::path("report") / "wordclouds" / (file + ".freq.tsv"), wordcloud_tsv(fw, 0));
    }

    std::set<std::size_t> ms;
    for (auto m : config_.histogram_ms) ms.insert(std::min(m, rig_->words()));
    ms.insert(rig_->words());
    std::string min_table = "m,min_S\n";
    for (auto m : ms) {
      const auto h = sum_histogram(*rig_, m, config_.histogram_bins);
      write(fs::path("report") / "histograms" / fmt::format("sum_m{}.csv", m),
            histogram_csv(h, p));
      min_table += fmt::format("{},{:.{}f}\n", m, h.min_sum(), p);
    }
    write("report/min_sum_by_m.csv", min_table);

    // Least informative words: the tail of the sum ranking, lowest first.
    std::string least = "rank,stem,score\n";
    const auto n = std::min(config_.top_n, sum_list_->size());
    for (std::size_t i = 0; i < n; ++i) {
      const auto& item = sum_list_->items[sum_list_->size() - 1 - i];
      least += fmt::format("{},{},{:.{}f}\n", sum_list_->size() - i,
                           csv::escape(item.stem), item.score, p);
    }
    write("report/least_informative.csv", least);

    const auto stems = fm_->stems();
    const auto cats = fm_->category_names();
    auto dense = [&](const char* name, const Normalized& norm) {
      for (const auto& w : norm.warnings) warn(w);
      write_stream(fs::path("report") / name, [&](std::ostream& o) {
        write_dense_csv(norm.matrix, stems, cats, p, o);
      });
    };
    dense("normalized_rows.csv", normalize_rows_l1(*fm_));
    dense("normalized_cols.csv", normalize_cols_l1(*fm_));
    dense("normalized_two_step.csv", normalize_two_step(*fm_));
  }

  const PipelineConfig& config_;
  std::ostream& log_;
  PipelineResult result_;

  std::string key_clean_;
  std::string key_dict_;
  std::string corpus_hash_;
  std::optional<Corpus> corpus_;
  std::optional<Dictionary> dict_;
  std::optional<FrequencyMatrix> fm_;
  std::optional<RigMatrix> rig_;
  std::optional<RankedList> sum_list_;
  std::optional<RankedList> max_list_;
  std::size_t extra_rankings_ = 0;
};

std::unique_ptr<tbb::global_control> thread_limit(std::size_t jobs) {
  if (jobs == 0) return nullptr;
  return std::make_unique<tbb::global_control>(
      tbb::global_control::max_allowed_parallelism, jobs);
}

void check(const PipelineConfig& config) {
  try {
    config.validate();
  } catch (const std::exception& e) {
    throw StageError(Stage::kConfig, e.what());
  }
}

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& config, const PipelineTargets& targets,
                            std::ostream& log) {
  check(config);
  const auto limit = thread_limit(config.jobs);
  return Run(config, log).execute(targets);
}

PipelineResult run_ingest(const PipelineConfig& config, std::ostream& log) {
  check(config);
  return Run(config, log).ingest_only();
}

}  // namespace rigspace
