#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "rigspace/error.hpp"

namespace rigspace {

/// Pipeline stages in execution order.
enum class Stage {
  kConfig,
  kIngest,
  kClean,
  kDict,
  kFreq,
  kRig,
  kRank,
  kThesaurus,
  kCoverage,
  kCompare,
  kReport,
  kIo,
};

std::string_view to_string(Stage stage);

/// Process exit status for a failure in `stage`; 0 is reserved for success.
int exit_code(Stage stage);

/// A fatal error tagged with the stage that raised it.
class StageError : public Error {
 public:
  StageError(Stage stage, const std::string& message);
  Stage stage() const { return stage_; }

 private:
  Stage stage_;
};

struct PipelineConfig {
  std::filesystem::path input;
  std::filesystem::path rules;
  std::filesystem::path out = "rigspace_out";
  std::size_t min_tokens = 30;
  std::size_t max_tokens = 500;
  /// Length floor at ingest; 0 means "same as min_tokens".
  std::size_t pre_min_tokens = 0;
  std::size_t threshold = 10;
  std::size_t thesaurus_size = 5000;
  std::size_t top_n = 100;
  int precision = 6;
  std::size_t window = 300;
  std::size_t histogram_bins = 50;
  /// Worker threads; 0 lets the runtime decide. Never affects outputs.
  std::size_t jobs = 0;
  std::vector<std::size_t> coverage_ns = {100, 200, 300, 400, 500};
  std::vector<std::size_t> compare_ns = {10, 100, 1000, 5000, 10000};
  std::vector<std::size_t> histogram_ms = {1000, 2000, 3000, 4000, 5000};
  /// Terms counted before and after cleaning in the audit table.
  std::vector<std::string> audit_terms = {"elsevier", "reserved", "copyright",
                                          "rights", "published", "ltd",
                                          "wiley", "springer"};
  /// Extra rankings written by the rank stage, e.g. `rig:<category>`.
  std::vector<std::string> criteria;
  std::string stemmer = "porter-1980";

  std::size_t ingest_min_tokens() const {
    return pre_min_tokens == 0 ? min_tokens : pre_min_tokens;
  }

  /// Throws InvalidArgument on a non-positive numeric field or
  /// min_tokens > max_tokens.
  void validate() const;
  /// The config back in key=value form (paths as given).
  std::string to_text() const;
};

/// key=value lines; `#` comments and blank lines are ignored. Unknown keys
/// and unparsable values throw InvalidArgument naming the line.
PipelineConfig parse_config(std::istream& in, PipelineConfig base = {});
PipelineConfig load_config(const std::filesystem::path& path, PipelineConfig base = {});

/// Sets one key as parse_config would.
void set_config_value(PipelineConfig& config, std::string_view key, std::string_view value);

/// Which outputs a run produces. Stages up to and including the deepest
/// requested one run; earlier stages are reused from cache when valid.
struct PipelineTargets {
  bool clean = false;
  bool dict = false;
  bool freq = false;
  bool rig = false;
  bool rank = false;
  bool thesaurus = false;
  bool coverage = false;
  bool compare = false;
  bool report = false;

  static PipelineTargets all();
  static PipelineTargets up_to(Stage stage);
};

struct PipelineResult {
  std::vector<std::filesystem::path> artifacts;  // relative to config.out
  std::vector<std::string> reused_stages;
  std::vector<std::string> warnings;
};

/// Runs the pipeline. Every stage writes its artifact and a manifest under
/// `out/manifests`. The clean, dict and freq stages are skipped when their
/// manifest key (a hash of their inputs and parameters) matches and their
/// outputs hash as recorded. Errors are rethrown as StageError. Progress
/// lines go to `log`.
PipelineResult run_pipeline(const PipelineConfig& config, const PipelineTargets& targets,
                            std::ostream& log);

/// Stand-alone ingest: writes `ingest_report.csv` and
/// `corpus.ingested.jsonl` to config.out.
PipelineResult run_ingest(const PipelineConfig& config, std::ostream& log);

}  // namespace rigspace
