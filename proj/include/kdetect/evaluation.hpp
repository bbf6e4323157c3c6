#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "kdetect/classifier.hpp"
#include "kdetect/corpus.hpp"
#include "kdetect/features.hpp"
#include "kdetect/tagmap.hpp"

namespace kdetect {

inline constexpr int kReportFormatVersion = 1;

// Mann-Whitney AUC with midranks for ties. Throws PreconditionError on a
// length mismatch or when only one class is present.
double auc_roc(std::span<const double> scores, std::span<const int> labels);

struct SplitSpec {
  Genre genre = Genre::kEssay;
  double train_human_fraction = 0.8;
  std::string train_generator = "gpt-4o";
  std::vector<std::string> test_generators = {"solar", "qwen2", "llama3.1"};
  std::int64_t seed = 0;

  void validate() const;
};

struct NamedCorpus {
  std::string generator;
  Corpus corpus;
};

struct OodSplit {
  Corpus train;
  std::vector<NamedCorpus> tests;  // in SplitSpec::test_generators order
  std::vector<std::string> train_human_ids;
  std::vector<std::string> test_human_ids;
};

// Number of human documents that go to training: floor(fraction * humans).
std::size_t train_human_count(std::size_t humans, double fraction);

// Unseen-generator split. The genre's human documents are permuted with a
// seeded Fisher-Yates shuffle (SplitMix64, j = next() % (i + 1) for i from
// H-1 down to 1); the first train_human_count() join every train-generator
// document, the rest are paired with each test generator. Throws
// MissingGroupError naming an absent author group.
OodSplit make_ood_split(const Corpus& corpus, const SplitSpec& spec);

struct EvaluationReport {
  Genre genre = Genre::kEssay;
  FeatureSetId feature_set_id = FeatureSetId::kPunctuation;
  std::vector<std::int64_t> seeds;
  std::vector<std::string> targets;
  std::map<std::string, std::vector<double>> per_target;  // one AUC per seed
  std::map<std::string, double> averages;
  double grand_average = 0.0;
};

struct ProtocolOptions {
  std::string train_generator = "gpt-4o";
  // Empty: every non-human author of the genre other than the train generator,
  // in order of first appearance.
  std::vector<std::string> test_generators;
  double train_human_fraction = 0.8;
};

inline const std::vector<std::int64_t> kDefaultSeeds = {0, 1, 2, 3, 4};

// For each seed: split, train logistic regression on the train split, score
// every test corpus and record its AUC.
EvaluationReport run_protocol(const Corpus& corpus, Genre genre, FeatureSetId feature_set,
                              const CanonicalTagMap& tagmap, const TrainConfig& config,
                              std::span<const std::int64_t> seeds,
                              const ProtocolOptions& options = {});

std::vector<std::string> resolve_test_generators(const Corpus& corpus, Genre genre,
                                                 const ProtocolOptions& options);

std::string report_to_json(const EvaluationReport& report);
// Columns genre,feature_set,target,seed,auc; `header` controls the first line.
std::string report_to_csv(const EvaluationReport& report, bool header = true);

}  // namespace kdetect
