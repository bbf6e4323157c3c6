#pragma once

#include "kdetect/corpus.hpp"
#include "kdetect/tagmap.hpp"

namespace kdetect {

// Comma-usage features of one text. "Morphemes" never include symbol
// tokens (COMMA or SYMBOL category) in any count below.
struct CommaFeatures {
  double inclusion_rate = 0.0;
  double usage_rate = 0.0;
  double avg_relative_position = 0.0;
  double avg_segment_length = 0.0;
  double pos_pair_diversity = 0.0;
};

// Share of sentences holding at least one comma.
double comma_inclusion_rate(const TaggedDocument& doc, const CanonicalTagMap& tagmap);

// Commas over morphemes in one sentence; 0.0 without morphemes.
double comma_usage_rate(const Sentence& sentence, const CanonicalTagMap& tagmap);

// Mean over the sentence's commas of (morphemes before the comma) / (morphemes
// in the sentence). Throws PreconditionError when the sentence has no comma.
double comma_relative_positions(const Sentence& sentence, const CanonicalTagMap& tagmap);

// Mean morpheme count of the comma-delimited segments; empty segments are
// dropped and a comma-free sentence is a single segment. 0.0 when no segment
// remains.
double comma_segment_lengths(const Sentence& sentence, const CanonicalTagMap& tagmap);

// Unique (tag before, tag after) raw-tag pairs around commas over all such
// pairs in the text. Commas at either sentence edge form no pair.
double comma_pos_pair_diversity(const TaggedDocument& doc, const CanonicalTagMap& tagmap);

CommaFeatures comma_feature_vector(const TaggedDocument& doc, const CanonicalTagMap& tagmap);

}  // namespace kdetect
