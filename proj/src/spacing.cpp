#include "kdetect/spacing.hpp"

#include <set>
#include <string>

namespace kdetect {

namespace {

struct Tally {
  std::size_t hits = 0;
  std::size_t total = 0;

  double ratio() const {
    return total == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(total);
  }
};

// Calls fn(sentence, index) for every non-initial token of every sentence.
template <typename Fn>
void for_each_adjacent(const TaggedDocument& doc, Fn&& fn) {
  for (const auto& sentence : doc.sentences) {
    for (std::size_t i = 1; i < sentence.size(); ++i) fn(sentence, i);
  }
}

}  // namespace

double mmn_bn_space_ratio(const TaggedDocument& doc, const CanonicalTagMap& tagmap) {
  Tally tally;
  for_each_adjacent(doc, [&](const Sentence& s, std::size_t i) {
    if (categorize(tagmap, s[i - 1]) != CanonicalCategory::kNumeralDeterminer) return;
    if (categorize(tagmap, s[i]) != CanonicalCategory::kBoundNoun) return;
    ++tally.total;
    if (space_before(s, i)) ++tally.hits;
  });
  return tally.ratio();
}

double bn_space_ratio(const TaggedDocument& doc, const CanonicalTagMap& tagmap) {
  Tally tally;
  const auto& trivial = tagmap.bn_trivial_surfaces();
  for_each_adjacent(doc, [&](const Sentence& s, std::size_t i) {
    if (categorize(tagmap, s[i]) != CanonicalCategory::kBoundNoun) return;
    if (trivial.contains(s[i].surface)) return;
    ++tally.total;
    if (space_before(s, i)) ++tally.hits;
  });
  return tally.ratio();
}

double vx_space_ratio(const TaggedDocument& doc, const CanonicalTagMap& tagmap) {
  Tally tally;
  for_each_adjacent(doc, [&](const Sentence& s, std::size_t i) {
    if (categorize(tagmap, s[i]) != CanonicalCategory::kAuxiliaryPredicate) return;
    if (is_excluded_pair(tagmap, s[i - 1], s[i])) return;
    ++tally.total;
    if (space_before(s, i)) ++tally.hits;
  });
  return tally.ratio();
}

SpacingFeatures spacing_feature_vector(const TaggedDocument& doc, const CanonicalTagMap& tagmap) {
  return {mmn_bn_space_ratio(doc, tagmap), bn_space_ratio(doc, tagmap),
          vx_space_ratio(doc, tagmap)};
}

double eojeol_pos_diversity(const TaggedDocument& doc) {
  std::set<std::string> unique;
  std::size_t total = 0;
  for (const auto& sentence : doc.sentences) {
    std::string signature;
    for (std::size_t i = 0; i < sentence.size(); ++i) {
      if (i > 0 && space_before(sentence, i)) {
        unique.insert(std::move(signature));
        signature.clear();
        ++total;
      }
      if (!signature.empty()) signature += '+';
      signature += sentence[i].tag;
    }
    if (!sentence.tokens.empty()) {
      unique.insert(std::move(signature));
      ++total;
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(unique.size()) / static_cast<double>(total);
}

double unspaced_vx_diversity(const TaggedDocument& doc, const CanonicalTagMap& tagmap) {
  std::set<std::string> unique;
  std::size_t total = 0;
  for_each_adjacent(doc, [&](const Sentence& s, std::size_t i) {
    if (categorize(tagmap, s[i]) != CanonicalCategory::kAuxiliaryPredicate) return;
    if (space_before(s, i) || is_excluded_pair(tagmap, s[i - 1], s[i])) return;
    unique.insert(s[i].surface);
    ++total;
  });
  return total == 0 ? 0.0 : static_cast<double>(unique.size()) / static_cast<double>(total);
}

}  // namespace kdetect
