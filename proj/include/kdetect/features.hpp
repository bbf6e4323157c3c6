#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kdetect/corpus.hpp"
#include "kdetect/tagmap.hpp"

namespace kdetect {

enum class FeatureSetId { kSpacing, kPosNgram, kPunctuation };

inline constexpr std::array<FeatureSetId, 3> kAllFeatureSets = {
    FeatureSetId::kSpacing, FeatureSetId::kPosNgram, FeatureSetId::kPunctuation};

// "spacing", "pos_ngram", "punctuation".
std::string_view to_string(FeatureSetId id);
std::optional<FeatureSetId> parse_feature_set(std::string_view name);

// Column names in vector order: 3 spacing, 5 n-gram and 5 comma features.
const std::vector<std::string>& feature_names(FeatureSetId id);
inline std::size_t feature_dimension(FeatureSetId id) { return feature_names(id).size(); }

std::vector<double> featurize(const TaggedDocument& doc, FeatureSetId id,
                              const CanonicalTagMap& tagmap);

// Dense row-major matrix, one row per document.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  // Appends a row; the first row fixes the column count.
  void append_row(std::span<const double> values);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

FeatureMatrix featurize_corpus(const Corpus& corpus, FeatureSetId id, const CanonicalTagMap& tagmap);

std::vector<int> labels_of(const Corpus& corpus);

}  // namespace kdetect
