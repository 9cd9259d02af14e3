// rigspace: word-category relative information gain toolkit.

#include <CLI11.hpp>
#include <fmt/format.h>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "rigspace/corpus.hpp"
#include "rigspace/pipeline.hpp"
#include "rigspace/synthetic.hpp"

namespace {

using rigspace::PipelineConfig;
using rigspace::Stage;

struct Flags {
  std::optional<std::string> config;
  std::map<std::string, std::string> overrides;  // config key -> value
  std::vector<std::string> criteria;
  std::uint64_t seed = 42;
  std::string synth_kind = "planted";
  std::string synth_output;
  std::optional<std::size_t> synth_documents;
  std::optional<std::size_t> synth_categories;
};

void add_override(CLI::App& app, Flags& flags, const std::string& flag,
                  const std::string& key, const std::string& help) {
  app.add_option_function<std::string>(
         flag, [&flags, key](const std::string& v) { flags.overrides[key] = v; }, help)
      ->type_name(key == "input" || key == "rules" || key == "out" ? "PATH" : "VALUE");
}

PipelineConfig resolve(const Flags& flags) {
  PipelineConfig config;
  if (flags.config) config = rigspace::load_config(*flags.config, config);
  for (const auto& [key, value] : flags.overrides) {
    rigspace::set_config_value(config, key, value);
  }
  if (!flags.criteria.empty()) config.criteria = flags.criteria;
  return config;
}

int run_synth(const Flags& flags) {
  namespace syn = rigspace::synthetic;
  rigspace::Corpus corpus;
  if (flags.synth_kind == "random") {
    corpus = syn::random_corpus(flags.seed);
  } else if (flags.synth_kind == "planted") {
    syn::PlantedOptions o;
    if (flags.synth_documents) o.documents = *flags.synth_documents;
    if (flags.synth_categories) o.categories = *flags.synth_categories;
    corpus = syn::planted_corpus(flags.seed, o).corpus;
  } else if (flags.synth_kind == "scale") {
    syn::ScaleOptions o;
    if (flags.synth_documents) o.documents = *flags.synth_documents;
    if (flags.synth_categories) o.categories = *flags.synth_categories;
    corpus = syn::scale_corpus(flags.seed, o);
  } else {
    throw rigspace::InvalidArgument("synth: --kind must be random, planted or scale");
  }
  std::ofstream out(flags.synth_output, std::ios::binary);
  if (!out) throw rigspace::InvalidArgument("synth: cannot write " + flags.synth_output);
  rigspace::write_jsonl(corpus, out);
  std::cerr << fmt::format("synth: wrote {} documents in {} categories to {}\n",
                           corpus.size(), corpus.category_count(), flags.synth_output);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Word-category relative information gain toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  Flags flags;
  app.add_option("--config", flags.config, "key=value configuration file");
  add_override(app, flags, "--out", "out", "Output directory");
  add_override(app, flags, "--jobs", "jobs", "Worker threads (0: all cores)");
  app.add_option("--seed", flags.seed, "Seed for the synthetic corpus generator");

  add_override(app, flags, "--input", "input", "JSON Lines corpus");
  add_override(app, flags, "--rules", "rules", "Notice rule file");
  add_override(app, flags, "--min-tokens", "min_tokens", "Minimum length after cleaning");
  add_override(app, flags, "--max-tokens", "max_tokens", "Maximum length");
  add_override(app, flags, "--pre-min-tokens", "pre_min_tokens",
               "Minimum length at ingest (default: --min-tokens)");
  add_override(app, flags, "--threshold", "threshold", "Dictionary document frequency");
  add_override(app, flags, "--thesaurus-size", "thesaurus_size", "Thesaurus size m");
  add_override(app, flags, "--top-n", "top_n", "Words per category table");
  add_override(app, flags, "--precision", "precision", "Decimals in ranked outputs");
  add_override(app, flags, "--window", "window", "Head/tail window for notices");

  struct Command {
    const char* name;
    const char* help;
    Stage stage;
  };
  const Command commands[] = {
      {"ingest", "Read and length-filter a corpus", Stage::kIngest},
      {"clean", "Ingest and remove notices", Stage::kClean},
      {"dict", "Build the core dictionary", Stage::kDict},
      {"freq", "Build the word-category frequency matrix", Stage::kFreq},
      {"rig", "Build the word-category RIG matrix", Stage::kRig},
      {"rank", "Rank words by sum and max RIG (and --criterion)", Stage::kRank},
      {"thesaurus", "Extract the top-m thesaurus", Stage::kThesaurus},
      {"coverage", "Top-n union coverage tables", Stage::kCoverage},
      {"compare", "Compare sum and max rankings", Stage::kCompare},
      {"report", "Per-category tables, word clouds, histograms", Stage::kReport},
      {"pipeline", "Run every stage", Stage::kReport},
  };
  std::map<CLI::App*, Stage> stage_of;
  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    stage_of[sub] = c.stage;
    if (std::string_view(c.name) == "rank") {
      sub->add_option("--criterion", flags.criteria,
                      "Extra ranking: rig:<category> or freq:<category>");
    }
  }
  auto* synth = app.add_subcommand("synth", "Write a synthetic corpus");
  synth->add_option("--kind", flags.synth_kind, "random, planted or scale")
      ->capture_default_str();
  synth->add_option("--output", flags.synth_output, "JSON Lines file")->required();
  synth->add_option("--documents", flags.synth_documents, "Documents (planted, scale)");
  synth->add_option("--categories", flags.synth_categories, "Categories (planted, scale)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth->parsed()) return run_synth(flags);

    PipelineConfig config;
    try {
      config = resolve(flags);
    } catch (const std::exception& e) {
      throw rigspace::StageError(Stage::kConfig, e.what());
    }
    CLI::App* sub = app.get_subcommands().front();
    const Stage stage = stage_of.at(sub);

    rigspace::PipelineResult result;
    if (stage == Stage::kIngest) {
      result = rigspace::run_ingest(config, std::cerr);
    } else {
      result = rigspace::run_pipeline(config, rigspace::PipelineTargets::up_to(stage),
                                      std::cerr);
    }
    std::cerr << fmt::format("{}: {} artifacts in {}", sub->get_name(),
                             result.artifacts.size(), config.out.string());
    if (!result.reused_stages.empty()) {
      std::cerr << fmt::format(" (reused: {})", fmt::join(result.reused_stages, ", "));
    }
    std::cerr << "\n";
    return 0;
  } catch (const rigspace::StageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return rigspace::exit_code(e.stage());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
