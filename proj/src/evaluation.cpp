#include "kdetect/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "kdetect/error.hpp"
#include "kdetect/format.hpp"
#include "kdetect/random.hpp"

namespace kdetect {

double auc_roc(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) {
    throw PreconditionError("auc_roc: " + std::to_string(scores.size()) + " scores but " +
                            std::to_string(labels.size()) + " labels");
  }
  std::uint64_t pos = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (std::isnan(scores[i])) throw PreconditionError("auc_roc: NaN score");
    if (labels[i] != 0 && labels[i] != 1) throw PreconditionError("auc_roc: labels must be 0 or 1");
    pos += labels[i] == 1 ? 1 : 0;
  }
  const std::uint64_t neg = scores.size() - pos;
  if (pos == 0 || neg == 0) throw PreconditionError("auc_roc: both classes must be present");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Twice the midrank sum of positives, kept in integers so ties stay exact.
  std::uint64_t rank_sum_x2 = 0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i + 1;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
    const std::uint64_t midrank_x2 = i + 1 + j;  // ranks i+1..j
    for (std::size_t k = i; k < j; ++k) {
      if (labels[order[k]] == 1) rank_sum_x2 += midrank_x2;
    }
    i = j;
  }
  const std::uint64_t u_x2 = rank_sum_x2 - pos * (pos + 1);
  const std::uint64_t total_x2 = 2 * pos * neg;
  // Dividing the smaller of U and PN - U keeps auc(s) + auc(-s) == 1 exactly.
  if (2 * u_x2 <= total_x2) {
    return static_cast<double>(u_x2) / static_cast<double>(total_x2);
  }
  return 1.0 - static_cast<double>(total_x2 - u_x2) / static_cast<double>(total_x2);
}

void SplitSpec::validate() const {
  if (!(train_human_fraction > 0.0 && train_human_fraction < 1.0)) {
    throw PreconditionError("train_human_fraction must be in (0, 1)");
  }
  if (test_generators.empty()) throw PreconditionError("test_generators must be non-empty");
  for (const auto& g : test_generators) {
    if (g == train_generator) {
      throw PreconditionError("test generator '" + g + "' equals the train generator");
    }
    if (g == kHumanAuthor) throw PreconditionError("'human' cannot be a test generator");
  }
  if (train_generator == kHumanAuthor) throw PreconditionError("'human' cannot be the train generator");
}

std::size_t train_human_count(std::size_t humans, double fraction) {
  // The epsilon absorbs representation error such as 0.29 * 100 = 28.999...
  return static_cast<std::size_t>(std::floor(fraction * static_cast<double>(humans) + 1e-9));
}

OodSplit make_ood_split(const Corpus& corpus, const SplitSpec& spec) {
  spec.validate();
  std::vector<const TaggedDocument*> humans;
  std::unordered_map<std::string, std::vector<const TaggedDocument*>> by_author;
  for (const auto& doc : corpus.documents) {
    if (doc.genre != spec.genre) continue;
    if (doc.author == kHumanAuthor) {
      humans.push_back(&doc);
    } else {
      by_author[doc.author].push_back(&doc);
    }
  }
  if (humans.empty()) throw MissingGroupError(std::string(kHumanAuthor));
  if (!by_author.contains(spec.train_generator)) throw MissingGroupError(spec.train_generator);
  for (const auto& g : spec.test_generators) {
    if (!by_author.contains(g)) throw MissingGroupError(g);
  }

  SplitMix64 rng(static_cast<std::uint64_t>(spec.seed));
  for (std::size_t i = humans.size(); i-- > 1;) {
    std::swap(humans[i], humans[rng.below(i + 1)]);
  }
  const std::size_t n_train = train_human_count(humans.size(), spec.train_human_fraction);
  if (n_train == 0 || n_train == humans.size()) {
    throw PreconditionError("make_ood_split: " + std::to_string(humans.size()) +
                            " human documents cannot be split with fraction " +
                            std::to_string(spec.train_human_fraction));
  }

  OodSplit split;
  for (std::size_t i = 0; i < humans.size(); ++i) {
    if (i < n_train) {
      split.train.documents.push_back(*humans[i]);
      split.train_human_ids.push_back(humans[i]->id);
    } else {
      split.test_human_ids.push_back(humans[i]->id);
    }
  }
  for (const auto* doc : by_author[spec.train_generator]) split.train.documents.push_back(*doc);
  for (const auto& g : spec.test_generators) {
    NamedCorpus test{g, {}};
    for (std::size_t i = n_train; i < humans.size(); ++i) test.corpus.documents.push_back(*humans[i]);
    for (const auto* doc : by_author[g]) test.corpus.documents.push_back(*doc);
    split.tests.push_back(std::move(test));
  }
  return split;
}

std::vector<std::string> resolve_test_generators(const Corpus& corpus, Genre genre,
                                                 const ProtocolOptions& options) {
  if (!options.test_generators.empty()) return options.test_generators;
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const auto& doc : corpus.documents) {
    if (doc.genre != genre || doc.author == kHumanAuthor || doc.author == options.train_generator) {
      continue;
    }
    if (seen.insert(doc.author).second) out.push_back(doc.author);
  }
  return out;
}

EvaluationReport run_protocol(const Corpus& corpus, Genre genre, FeatureSetId feature_set,
                              const CanonicalTagMap& tagmap, const TrainConfig& config,
                              std::span<const std::int64_t> seeds,
                              const ProtocolOptions& options) {
  if (seeds.empty()) throw PreconditionError("run_protocol: no seeds");
  config.validate();

  SplitSpec spec;
  spec.genre = genre;
  spec.train_human_fraction = options.train_human_fraction;
  spec.train_generator = options.train_generator;
  spec.test_generators = resolve_test_generators(corpus, genre, options);

  // Features do not depend on the split, so compute them once per document.
  std::unordered_map<std::string, std::vector<double>> cache;
  for (const auto& doc : corpus.documents) {
    if (doc.genre == genre) cache.emplace(doc.id, featurize(doc, feature_set, tagmap));
  }
  auto matrix_of = [&](const Corpus& c) {
    FeatureMatrix m(0, feature_dimension(feature_set));
    for (const auto& doc : c.documents) m.append_row(cache.at(doc.id));
    return m;
  };

  EvaluationReport report;
  report.genre = genre;
  report.feature_set_id = feature_set;
  report.seeds.assign(seeds.begin(), seeds.end());
  report.targets = spec.test_generators;

  for (std::int64_t seed : seeds) {
    spec.seed = seed;
    const OodSplit split = make_ood_split(corpus, spec);
    const auto labels = labels_of(split.train);
    const TrainedModel model =
        train_logreg(matrix_of(split.train), labels, config, feature_set, seed);
    for (const auto& test : split.tests) {
      const FeatureMatrix x = matrix_of(test.corpus);
      std::vector<double> scores(x.rows());
      for (std::size_t i = 0; i < x.rows(); ++i) scores[i] = predict_proba(model, x.row(i));
      report.per_target[test.generator].push_back(auc_roc(scores, labels_of(test.corpus)));
    }
  }

  double grand = 0.0;
  for (const auto& target : report.targets) {
    const auto& values = report.per_target[target];
    double sum = 0.0;
    for (double v : values) sum += v;
    report.averages[target] = sum / static_cast<double>(values.size());
    grand += report.averages[target];
  }
  report.grand_average = grand / static_cast<double>(report.targets.size());
  return report;
}

std::string report_to_json(const EvaluationReport& report) {
  nlohmann::ordered_json j;
  j["genre"] = std::string(to_string(report.genre));
  j["feature_set_id"] = std::string(to_string(report.feature_set_id));
  j["seeds"] = report.seeds;
  j["targets"] = report.targets;
  nlohmann::ordered_json per_target = nlohmann::ordered_json::object();
  nlohmann::ordered_json averages = nlohmann::ordered_json::object();
  for (const auto& t : report.targets) {
    per_target[t] = report.per_target.at(t);
    averages[t] = report.averages.at(t);
  }
  j["per_target"] = std::move(per_target);
  j["averages"] = std::move(averages);
  j["grand_average"] = report.grand_average;
  j["format_version"] = kReportFormatVersion;
  return j.dump(2) + "\n";
}

std::string report_to_csv(const EvaluationReport& report, bool header) {
  std::string out;
  if (header) out += "genre,feature_set,target,seed,auc\n";
  for (const auto& t : report.targets) {
    const auto& values = report.per_target.at(t);
    for (std::size_t i = 0; i < values.size(); ++i) {
      out += std::string(to_string(report.genre)) + "," +
             std::string(to_string(report.feature_set_id)) + "," + csv_field(t) + "," +
             std::to_string(report.seeds[i]) + "," + format_number(values[i]) + "\n";
    }
  }
  return out;
}

}  // namespace kdetect
