#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "kdetect/corpus.hpp"

namespace kdetect {

enum class CanonicalCategory {
  kBoundNoun,
  kNumeralDeterminer,
  kAuxiliaryPredicate,
  kEnding,
  kComma,
  kNominal,
  kPredicate,
  kModifier,
  kInterjection,
  kRelation,
  kAffix,
  kSymbol,
  kForeign,
  kOther,
};

// Spellings used in tag-map files: BN, MMN, VX, ENDING, COMMA, NOMINAL, ...
std::string_view to_string(CanonicalCategory category);
std::optional<CanonicalCategory> parse_category(std::string_view name);

// Word-type classes used for POS distribution reports, in report order.
inline constexpr std::array<CanonicalCategory, 10> kWordTypeCategories = {
    CanonicalCategory::kNominal,   CanonicalCategory::kPredicate,
    CanonicalCategory::kModifier,  CanonicalCategory::kInterjection,
    CanonicalCategory::kRelation,  CanonicalCategory::kEnding,
    CanonicalCategory::kAffix,     CanonicalCategory::kSymbol,
    CanonicalCategory::kForeign,   CanonicalCategory::kOther,
};

// Folds the spacing/comma-specific categories into their word type:
// BN -> NOMINAL, MMN -> MODIFIER, VX -> PREDICATE, COMMA -> SYMBOL.
CanonicalCategory word_type(CanonicalCategory category);

// Commas and other punctuation. These are not counted as morphemes.
inline bool is_symbol(CanonicalCategory category) {
  return category == CanonicalCategory::kComma || category == CanonicalCategory::kSymbol;
}

// A (prev, curr) token pair on which spacing is not a stylistic choice.
// A rule with any empty set never matches.
struct ExclusionRule {
  std::string rule_id;
  CanonicalCategory prev_category = CanonicalCategory::kOther;
  std::set<std::string> prev_surface_suffixes;
  CanonicalCategory curr_category = CanonicalCategory::kOther;
  std::set<std::string> curr_surfaces;

  bool active() const {
    return !prev_surface_suffixes.empty() && !curr_surfaces.empty();
  }
};

class CanonicalTagMap {
 public:
  CanonicalTagMap() = default;
  CanonicalTagMap(std::string tagger_name, std::map<std::string, CanonicalCategory> mapping,
                  std::vector<ExclusionRule> exclusion_rules = {},
                  std::set<std::string> bn_trivial_surfaces = {});

  const std::string& tagger_name() const { return tagger_name_; }
  const std::map<std::string, CanonicalCategory>& mapping() const { return mapping_; }
  const std::vector<ExclusionRule>& exclusion_rules() const { return exclusion_rules_; }
  // Bound-noun surfaces left out of the BN space ratio.
  const std::set<std::string>& bn_trivial_surfaces() const { return bn_trivial_surfaces_; }

  CanonicalCategory category_of(std::string_view raw_tag) const;

 private:
  std::string tagger_name_;
  std::map<std::string, CanonicalCategory, std::less<>> lookup_;
  std::map<std::string, CanonicalCategory> mapping_;
  std::vector<ExclusionRule> exclusion_rules_;
  std::set<std::string> bn_trivial_surfaces_;
};

CanonicalCategory categorize(const CanonicalTagMap& tagmap, const MorphemeToken& token);

bool is_excluded_pair(const CanonicalTagMap& tagmap, const MorphemeToken& prev,
                      const MorphemeToken& curr);

CanonicalTagMap parse_tagmap(std::string_view json_text);
CanonicalTagMap load_tagmap(const std::filesystem::path& path);

// Built-in maps: "bareun", "kkma" and "synthetic" (the synth generator's tagset).
std::optional<CanonicalTagMap> preset_tagmap(std::string_view name);

// Loads `name_or_path` as a file when it exists, otherwise as a preset name.
CanonicalTagMap resolve_tagmap(const std::string& name_or_path);

}  // namespace kdetect
