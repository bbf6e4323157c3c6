#include "kdetect/comma.hpp"

#include <set>
#include <string>
#include <utility>

#include "kdetect/error.hpp"

namespace kdetect {

namespace {

bool is_comma(const CanonicalTagMap& tagmap, const MorphemeToken& token) {
  return categorize(tagmap, token) == CanonicalCategory::kComma;
}

bool is_morpheme(const CanonicalTagMap& tagmap, const MorphemeToken& token) {
  return !is_symbol(categorize(tagmap, token));
}

bool has_comma(const Sentence& sentence, const CanonicalTagMap& tagmap) {
  for (const auto& t : sentence.tokens) {
    if (is_comma(tagmap, t)) return true;
  }
  return false;
}

std::size_t morpheme_count(const Sentence& sentence, const CanonicalTagMap& tagmap) {
  std::size_t n = 0;
  for (const auto& t : sentence.tokens) n += is_morpheme(tagmap, t) ? 1 : 0;
  return n;
}

}  // namespace

double comma_inclusion_rate(const TaggedDocument& doc, const CanonicalTagMap& tagmap) {
  if (doc.sentences.empty()) return 0.0;
  std::size_t with_comma = 0;
  for (const auto& s : doc.sentences) with_comma += has_comma(s, tagmap) ? 1 : 0;
  return static_cast<double>(with_comma) / static_cast<double>(doc.sentences.size());
}

double comma_usage_rate(const Sentence& sentence, const CanonicalTagMap& tagmap) {
  std::size_t commas = 0;
  std::size_t morphemes = 0;
  for (const auto& t : sentence.tokens) {
    if (is_comma(tagmap, t)) {
      ++commas;
    } else if (is_morpheme(tagmap, t)) {
      ++morphemes;
    }
  }
  return morphemes == 0 ? 0.0 : static_cast<double>(commas) / static_cast<double>(morphemes);
}

double comma_relative_positions(const Sentence& sentence, const CanonicalTagMap& tagmap) {
  const std::size_t total = morpheme_count(sentence, tagmap);
  std::size_t before = 0;
  std::size_t commas = 0;
  double sum = 0.0;
  for (const auto& t : sentence.tokens) {
    if (is_comma(tagmap, t)) {
      ++commas;
      if (total > 0) sum += static_cast<double>(before) / static_cast<double>(total);
    } else if (is_morpheme(tagmap, t)) {
      ++before;
    }
  }
  if (commas == 0) throw PreconditionError("comma_relative_positions: sentence has no comma");
  return sum / static_cast<double>(commas);
}

double comma_segment_lengths(const Sentence& sentence, const CanonicalTagMap& tagmap) {
  std::size_t segments = 0;
  std::size_t morphemes = 0;
  std::size_t current = 0;
  for (const auto& t : sentence.tokens) {
    if (is_comma(tagmap, t)) {
      if (current > 0) ++segments;
      current = 0;
    } else if (is_morpheme(tagmap, t)) {
      ++current;
      ++morphemes;
    }
  }
  if (current > 0) ++segments;
  return segments == 0 ? 0.0 : static_cast<double>(morphemes) / static_cast<double>(segments);
}

double comma_pos_pair_diversity(const TaggedDocument& doc, const CanonicalTagMap& tagmap) {
  std::set<std::pair<std::string, std::string>> unique;
  std::size_t total = 0;
  for (const auto& s : doc.sentences) {
    for (std::size_t i = 1; i + 1 < s.size(); ++i) {
      if (!is_comma(tagmap, s[i])) continue;
      unique.emplace(s[i - 1].tag, s[i + 1].tag);
      ++total;
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(unique.size()) / static_cast<double>(total);
}

CommaFeatures comma_feature_vector(const TaggedDocument& doc, const CanonicalTagMap& tagmap) {
  CommaFeatures f;
  f.inclusion_rate = comma_inclusion_rate(doc, tagmap);
  f.pos_pair_diversity = comma_pos_pair_diversity(doc, tagmap);
  if (doc.sentences.empty()) return f;

  double usage = 0.0;
  double segment = 0.0;
  double position = 0.0;
  std::size_t comma_sentences = 0;
  for (const auto& s : doc.sentences) {
    usage += comma_usage_rate(s, tagmap);
    segment += comma_segment_lengths(s, tagmap);
    if (has_comma(s, tagmap)) {
      position += comma_relative_positions(s, tagmap);
      ++comma_sentences;
    }
  }
  const auto n = static_cast<double>(doc.sentences.size());
  f.usage_rate = usage / n;
  f.avg_segment_length = segment / n;
  f.avg_relative_position =
      comma_sentences == 0 ? 0.0 : position / static_cast<double>(comma_sentences);
  return f;
}

}  // namespace kdetect
