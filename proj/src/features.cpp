#include "kdetect/features.hpp"

#include "kdetect/comma.hpp"
#include "kdetect/error.hpp"
#include "kdetect/posngram.hpp"
#include "kdetect/spacing.hpp"

namespace kdetect {

std::string_view to_string(FeatureSetId id) {
  switch (id) {
    case FeatureSetId::kSpacing: return "spacing";
    case FeatureSetId::kPosNgram: return "pos_ngram";
    case FeatureSetId::kPunctuation: return "punctuation";
  }
  return "spacing";
}

std::optional<FeatureSetId> parse_feature_set(std::string_view name) {
  for (auto id : kAllFeatureSets) {
    if (to_string(id) == name) return id;
  }
  return std::nullopt;
}

const std::vector<std::string>& feature_names(FeatureSetId id) {
  static const std::vector<std::string> spacing = {"mmn_bn_space_ratio", "bn_space_ratio",
                                                   "vx_space_ratio"};
  static const std::vector<std::string> ngram = {"pos_ngram_diversity_1", "pos_ngram_diversity_2",
                                                 "pos_ngram_diversity_3", "pos_ngram_diversity_4",
                                                 "pos_ngram_diversity_5"};
  static const std::vector<std::string> punctuation = {
      "comma_inclusion_rate", "comma_usage_rate", "comma_avg_relative_position",
      "comma_avg_segment_length", "comma_pos_pair_diversity"};
  switch (id) {
    case FeatureSetId::kSpacing: return spacing;
    case FeatureSetId::kPosNgram: return ngram;
    case FeatureSetId::kPunctuation: return punctuation;
  }
  return spacing;
}

std::vector<double> featurize(const TaggedDocument& doc, FeatureSetId id,
                              const CanonicalTagMap& tagmap) {
  switch (id) {
    case FeatureSetId::kSpacing: {
      const auto f = spacing_feature_vector(doc, tagmap);
      return {f.mmn_bn_space_ratio, f.bn_space_ratio, f.vx_space_ratio};
    }
    case FeatureSetId::kPosNgram: {
      const auto f = pos_ngram_feature_vector(doc);
      return {f.diversity.begin(), f.diversity.end()};
    }
    case FeatureSetId::kPunctuation: {
      const auto f = comma_feature_vector(doc, tagmap);
      return {f.inclusion_rate, f.usage_rate, f.avg_relative_position, f.avg_segment_length,
              f.pos_pair_diversity};
    }
  }
  return {};
}

void FeatureMatrix::append_row(std::span<const double> values) {
  if (rows_ == 0 && data_.empty()) cols_ = values.size();
  if (values.size() != cols_) {
    throw PreconditionError("FeatureMatrix: row has " + std::to_string(values.size()) +
                            " columns, expected " + std::to_string(cols_));
  }
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

FeatureMatrix featurize_corpus(const Corpus& corpus, FeatureSetId id, const CanonicalTagMap& tagmap) {
  FeatureMatrix m(0, feature_dimension(id));
  for (const auto& doc : corpus.documents) m.append_row(featurize(doc, id, tagmap));
  return m;
}

std::vector<int> labels_of(const Corpus& corpus) {
  std::vector<int> labels;
  labels.reserve(corpus.size());
  for (const auto& doc : corpus.documents) labels.push_back(doc.label);
  return labels;
}

}  // namespace kdetect
