#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "kdetect/corpus.hpp"

namespace kdetect {

// Statistical style of a synthetic author. Documents are tag streams with
// controlled comma, spacing and tag-diversity statistics, not Korean prose.
// They are tagged with the "synthetic" preset tagset: T0..T47 content tags
// plus MMN, NNB (bound noun), EC (ending), VX, SP (comma) and SF (period).
struct StyleProfile {
  std::string author = std::string(kHumanAuthor);
  Genre genre = Genre::kEssay;
  double comma_sentence_prob = 0.0;     // share of sentences with at least one comma
  double comma_per_morpheme = 0.0;      // target mean per-sentence comma usage rate
  double relative_position_bias = 0.5;  // target mean relative comma position
  // Share of commas placed at an arbitrary eojeol boundary. The rest mark a
  // clause junction: connective ending "고"/EC before the comma, T0 after it.
  double comma_context_diversity = 1.0;
  double bn_space_prob = 1.0;
  double vx_space_prob = 1.0;
  int tag_vocab_size = 16;              // number of content tags, at most 48
  std::pair<int, int> sentence_length_range = {16, 30};  // morphemes per sentence
  std::pair<int, int> sentence_count_range = {8, 16};    // sentences per document
  std::uint64_t seed = 0;

  void validate() const;
};

inline constexpr int kMaxSyntheticVocab = 48;

// n documents drawn from one SplitMix64 stream seeded with profile.seed.
// Ids are "<author>-<genre>-<seed>-<index>".
std::vector<TaggedDocument> generate_documents(const StyleProfile& profile, int n);

// n_per_class label-0 documents from `human` followed by n_per_class label-1
// documents from `llm`. `human.author` must be "human" and `llm.author` must not.
Corpus generate_corpus(const StyleProfile& human, const StyleProfile& llm, int n_per_class);

// Profiles calibrated to the essay comma contrast (inclusion 26.31% vs
// 61.03%, usage 1.13% vs 2.56%), with LLM-side spacing that follows the
// norms more strictly and a narrower tag repertoire.
StyleProfile calibrated_human_profile(std::uint64_t seed);
StyleProfile calibrated_llm_profile(std::string author, std::uint64_t seed);

// Human essays plus gpt-4o (training generator) and solar, qwen2, llama3.1
// (unseen generators), each a small perturbation of the calibrated LLM profile.
Corpus generate_ood_corpus(int n_human, int n_per_generator, std::uint64_t seed);

std::string profile_to_json(const StyleProfile& profile);
StyleProfile profile_from_json(const std::string& text);
StyleProfile load_profile(const std::filesystem::path& path);

}  // namespace kdetect
