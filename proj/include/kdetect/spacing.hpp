#pragma once

#include "kdetect/corpus.hpp"
#include "kdetect/tagmap.hpp"

namespace kdetect {

// Word-spacing classifier features. Ratios are pooled over the whole text
// (one division per document) and are 0.0 when nothing is eligible.
struct SpacingFeatures {
  double mmn_bn_space_ratio = 0.0;
  double bn_space_ratio = 0.0;
  double vx_space_ratio = 0.0;
};

// Spaced MMN->BN adjacent pairs over all MMN->BN adjacent pairs.
double mmn_bn_space_ratio(const TaggedDocument& doc, const CanonicalTagMap& tagmap);

// Spaced BN tokens over non-initial BN tokens, skipping the tag map's trivial surfaces.
double bn_space_ratio(const TaggedDocument& doc, const CanonicalTagMap& tagmap);

// Spaced VX tokens over non-initial VX tokens not covered by an exclusion rule.
double vx_space_ratio(const TaggedDocument& doc, const CanonicalTagMap& tagmap);

SpacingFeatures spacing_feature_vector(const TaggedDocument& doc, const CanonicalTagMap& tagmap);

// Unique eojeol tag signatures over eojeol count. A signature joins the raw
// tags of an eojeol's tokens with '+'.
double eojeol_pos_diversity(const TaggedDocument& doc);

// Unique surfaces among unspaced, non-excluded VX tokens over their count.
double unspaced_vx_diversity(const TaggedDocument& doc, const CanonicalTagMap& tagmap);

}  // namespace kdetect
