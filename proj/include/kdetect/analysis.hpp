#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kdetect/corpus.hpp"
#include "kdetect/tagmap.hpp"

namespace kdetect {

struct TagCommaCount {
  std::size_t occurrences = 0;
  std::size_t before_comma = 0;  // occurrences immediately followed by a comma
};

// Per raw tag, how often it occurs and how often the next token in the same
// sentence is a comma.
std::map<std::string, TagCommaCount> pos_before_comma_counts(const Corpus& corpus,
                                                             const CanonicalTagMap& tagmap);
std::map<std::string, double> pos_before_comma_ratios(const Corpus& corpus,
                                                      const CanonicalTagMap& tagmap);

using TagPair = std::pair<std::string, std::string>;

std::map<TagPair, std::size_t> comma_pos_pair_counts(const Corpus& corpus,
                                                     const CanonicalTagMap& tagmap);

// Pair counts normalized by the number of commas with both neighbors.
// Throws EmptyDistributionError when there is no such comma.
std::map<TagPair, double> comma_pos_pair_distribution(const Corpus& corpus,
                                                      const CanonicalTagMap& tagmap);

// Token share of each word-type class (see kWordTypeCategories); every class
// is present, absent ones with 0.
std::map<CanonicalCategory, double> pos_distribution(const Corpus& corpus,
                                                     const CanonicalTagMap& tagmap);

// Eojeol surface strings (token surfaces concatenated) in reading order.
std::vector<std::string> eojeol_words(const TaggedDocument& doc);

struct RankFrequency {
  std::size_t rank = 0;
  std::size_t frequency = 0;
  std::string word;

  bool operator==(const RankFrequency&) const = default;
};

// Ranks 1..K, frequency non-increasing, ties ordered by word bytes.
struct RankFrequencyCurve {
  std::vector<RankFrequency> points;
};

struct VocabGrowth {
  std::size_t tokens_seen = 0;
  std::size_t vocab_size = 0;

  bool operator==(const VocabGrowth&) const = default;
};

struct VocabGrowthCurve {
  std::vector<VocabGrowth> points;
};

RankFrequencyCurve zipf_curve(const Corpus& corpus);
VocabGrowthCurve heaps_curve(const Corpus& corpus);

}  // namespace kdetect
