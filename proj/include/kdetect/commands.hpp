#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kdetect/classifier.hpp"
#include "kdetect/corpus.hpp"
#include "kdetect/evaluation.hpp"
#include "kdetect/features.hpp"

// Workflows behind the `kdetect` subcommands. Data goes to `out` (or files
// under RunConfig::out_dir); diagnostics go to `diag`.
namespace kdetect::cli {

struct RunConfig {
  std::filesystem::path corpus_path;
  std::string tagmap = "bareun";     // file path or preset name
  std::string feature_set = "all";   // spacing | pos_ngram | punctuation | all
  std::optional<Genre> genre;
  std::vector<std::int64_t> seeds = kDefaultSeeds;
  TrainConfig train;
  std::filesystem::path out_dir;
  std::string train_generator = "gpt-4o";
  std::vector<std::string> test_generators;
  double train_human_fraction = 0.8;
};

// Reads a JSON object whose keys mirror RunConfig: corpus, tagmap,
// feature_set, genre, seeds, train {learning_rate, l2_lambda, max_iterations,
// tolerance}, out, train_generator, test_generators, train_human_fraction.
RunConfig load_run_config(const std::filesystem::path& path);
void apply_run_config_json(RunConfig& config, const std::string& json_text);

std::vector<FeatureSetId> selected_feature_sets(const std::string& name);
std::vector<std::int64_t> parse_seed_list(const std::string& csv);

// CSV: id,genre,author,label followed by the selected feature columns.
std::string featurize_csv(const Corpus& corpus, const std::vector<FeatureSetId>& sets,
                          const CanonicalTagMap& tagmap);
void cmd_featurize(const RunConfig& config, std::ostream& out, std::ostream& diag);

// Trains one model per selected feature set and writes
// <out_dir>/model_<feature_set>.json.
std::vector<TrainedModel> cmd_train(const RunConfig& config, std::ostream& out, std::ostream& diag);

// Writes report_<genre>_<feature_set>.{json,csv} per genre and feature set
// plus summary_<genre>.csv with per-target mean AUCs.
std::vector<EvaluationReport> cmd_evaluate(const RunConfig& config, std::ostream& out,
                                           std::ostream& diag);

struct DetectConfig {
  std::vector<std::filesystem::path> model_paths;
  std::filesystem::path corpus_path;    // featurized on the fly, or
  std::filesystem::path features_path;  // a featurize CSV
  std::string tagmap = "bareun";
  std::filesystem::path out_dir;
};

struct Detection {
  std::string id;
  double probability = 0.0;  // ensemble mean over models
  int label = 0;             // 1 iff probability > 0.5
};

inline int detection_label(double probability) { return probability > 0.5 ? 1 : 0; }

std::vector<Detection> detect_corpus(const std::vector<TrainedModel>& models, const Corpus& corpus,
                                     const CanonicalTagMap& tagmap);

// Table form of a featurize CSV: ids plus named numeric columns.
struct FeatureTable {
  std::vector<std::string> ids;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> values;  // one row per id
};
FeatureTable parse_feature_csv(const std::string& text);

// Throws Error naming the missing column when the table lacks a model's
// feature set.
std::vector<Detection> detect_table(const std::vector<TrainedModel>& models,
                                    const FeatureTable& table);

std::string detections_to_csv(const std::vector<Detection>& detections);
std::vector<Detection> cmd_detect(const DetectConfig& config, std::ostream& out, std::ostream& diag);

// Writes pos_before_comma.csv, comma_pairs.csv, pos_distribution.csv,
// zipf.csv and heaps.csv under out_dir, one block of rows per author.
void cmd_analyze(const RunConfig& config, std::ostream& out, std::ostream& diag);

struct SynthConfig {
  std::filesystem::path profile_a;  // human profile JSON
  std::filesystem::path profile_b;  // LLM profile JSON
  std::string preset;               // "essay" or "ood" instead of profile files
  int n_per_class = 200;
  std::uint64_t seed = 0;           // used by presets
  std::filesystem::path out_path;   // corpus JSONL; stdout when empty
};

Corpus cmd_synth(const SynthConfig& config, std::ostream& out, std::ostream& diag);

}  // namespace kdetect::cli
