#pragma once

#include <array>

#include "kdetect/corpus.hpp"

namespace kdetect {

inline constexpr int kMaxNgramOrder = 5;

// diversity[n - 1] is the score for order n.
struct PosNgramFeatures {
  std::array<double, kMaxNgramOrder> diversity{};
};

// Unique raw-tag n-grams over total n-grams. Windows stay inside a sentence
// and counts are pooled over the document. Throws PreconditionError unless
// 1 <= n <= 5.
double pos_ngram_diversity(const TaggedDocument& doc, int n);

PosNgramFeatures pos_ngram_feature_vector(const TaggedDocument& doc);

}  // namespace kdetect
