#include "kdetect/posngram.hpp"

#include <set>
#include <string_view>
#include <vector>

#include "kdetect/error.hpp"

namespace kdetect {

double pos_ngram_diversity(const TaggedDocument& doc, int n) {
  if (n < 1 || n > kMaxNgramOrder) {
    throw PreconditionError("pos_ngram_diversity: n must be in [1, 5], got " + std::to_string(n));
  }
  const auto order = static_cast<std::size_t>(n);
  std::set<std::vector<std::string_view>> unique;
  std::size_t total = 0;
  std::vector<std::string_view> window(order);
  for (const auto& sentence : doc.sentences) {
    if (sentence.size() < order) continue;
    for (std::size_t start = 0; start + order <= sentence.size(); ++start) {
      for (std::size_t k = 0; k < order; ++k) window[k] = sentence[start + k].tag;
      unique.insert(window);
      ++total;
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(unique.size()) / static_cast<double>(total);
}

PosNgramFeatures pos_ngram_feature_vector(const TaggedDocument& doc) {
  PosNgramFeatures out;
  for (int n = 1; n <= kMaxNgramOrder; ++n) out.diversity[n - 1] = pos_ngram_diversity(doc, n);
  return out;
}

}  // namespace kdetect
