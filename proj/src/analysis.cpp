#include "kdetect/analysis.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "kdetect/error.hpp"

namespace kdetect {

std::map<std::string, TagCommaCount> pos_before_comma_counts(const Corpus& corpus,
                                                             const CanonicalTagMap& tagmap) {
  std::map<std::string, TagCommaCount> counts;
  for (const auto& doc : corpus.documents) {
    for (const auto& s : doc.sentences) {
      for (std::size_t i = 0; i < s.size(); ++i) {
        auto& c = counts[s[i].tag];
        ++c.occurrences;
        if (i + 1 < s.size() && categorize(tagmap, s[i + 1]) == CanonicalCategory::kComma) {
          ++c.before_comma;
        }
      }
    }
  }
  return counts;
}

std::map<std::string, double> pos_before_comma_ratios(const Corpus& corpus,
                                                      const CanonicalTagMap& tagmap) {
  std::map<std::string, double> ratios;
  for (const auto& [tag, c] : pos_before_comma_counts(corpus, tagmap)) {
    ratios.emplace(tag, static_cast<double>(c.before_comma) / static_cast<double>(c.occurrences));
  }
  return ratios;
}

std::map<TagPair, std::size_t> comma_pos_pair_counts(const Corpus& corpus,
                                                     const CanonicalTagMap& tagmap) {
  std::map<TagPair, std::size_t> counts;
  for (const auto& doc : corpus.documents) {
    for (const auto& s : doc.sentences) {
      for (std::size_t i = 1; i + 1 < s.size(); ++i) {
        if (categorize(tagmap, s[i]) == CanonicalCategory::kComma) {
          ++counts[{s[i - 1].tag, s[i + 1].tag}];
        }
      }
    }
  }
  return counts;
}

std::map<TagPair, double> comma_pos_pair_distribution(const Corpus& corpus,
                                                      const CanonicalTagMap& tagmap) {
  const auto counts = comma_pos_pair_counts(corpus, tagmap);
  std::size_t total = 0;
  for (const auto& [_, n] : counts) total += n;
  if (total == 0) throw EmptyDistributionError("no comma with tokens on both sides");
  std::map<TagPair, double> dist;
  for (const auto& [pair, n] : counts) {
    dist.emplace(pair, static_cast<double>(n) / static_cast<double>(total));
  }
  return dist;
}

std::map<CanonicalCategory, double> pos_distribution(const Corpus& corpus,
                                                     const CanonicalTagMap& tagmap) {
  std::map<CanonicalCategory, std::size_t> counts;
  for (auto c : kWordTypeCategories) counts[c] = 0;
  std::size_t total = 0;
  for (const auto& doc : corpus.documents) {
    for (const auto& s : doc.sentences) {
      for (const auto& t : s.tokens) {
        ++counts[word_type(categorize(tagmap, t))];
        ++total;
      }
    }
  }
  std::map<CanonicalCategory, double> shares;
  for (const auto& [c, n] : counts) {
    shares[c] = total == 0 ? 0.0 : static_cast<double>(n) / static_cast<double>(total);
  }
  return shares;
}

std::vector<std::string> eojeol_words(const TaggedDocument& doc) {
  std::vector<std::string> words;
  for (const auto& s : doc.sentences) {
    std::string word;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i > 0 && space_before(s, i)) words.push_back(std::exchange(word, {}));
      word += s[i].surface;
    }
    if (!s.tokens.empty()) words.push_back(std::move(word));
  }
  return words;
}

RankFrequencyCurve zipf_curve(const Corpus& corpus) {
  std::unordered_map<std::string, std::size_t> freq;
  for (const auto& doc : corpus.documents) {
    for (auto& w : eojeol_words(doc)) ++freq[std::move(w)];
  }
  std::vector<std::pair<std::string, std::size_t>> entries(freq.begin(), freq.end());
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  RankFrequencyCurve curve;
  curve.points.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    curve.points.push_back({i + 1, entries[i].second, std::move(entries[i].first)});
  }
  return curve;
}

VocabGrowthCurve heaps_curve(const Corpus& corpus) {
  std::unordered_set<std::string> seen;
  VocabGrowthCurve curve;
  std::size_t n = 0;
  for (const auto& doc : corpus.documents) {
    for (auto& w : eojeol_words(doc)) {
      seen.insert(std::move(w));
      curve.points.push_back({++n, seen.size()});
    }
  }
  return curve;
}

}  // namespace kdetect
