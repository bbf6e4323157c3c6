#include "kdetect/tagmap.hpp"

#include <json.hpp>

#include "kdetect/error.hpp"
#include "kdetect/format.hpp"
#include "kdetect/preset_tagmaps.hpp"

namespace kdetect {

namespace {

struct CategoryName {
  CanonicalCategory category;
  std::string_view name;
};

constexpr std::array<CategoryName, 14> kCategoryNames = {{
    {CanonicalCategory::kBoundNoun, "BN"},
    {CanonicalCategory::kNumeralDeterminer, "MMN"},
    {CanonicalCategory::kAuxiliaryPredicate, "VX"},
    {CanonicalCategory::kEnding, "ENDING"},
    {CanonicalCategory::kComma, "COMMA"},
    {CanonicalCategory::kNominal, "NOMINAL"},
    {CanonicalCategory::kPredicate, "PREDICATE"},
    {CanonicalCategory::kModifier, "MODIFIER"},
    {CanonicalCategory::kInterjection, "INTERJECTION"},
    {CanonicalCategory::kRelation, "RELATION"},
    {CanonicalCategory::kAffix, "AFFIX"},
    {CanonicalCategory::kSymbol, "SYMBOL"},
    {CanonicalCategory::kForeign, "FOREIGN"},
    {CanonicalCategory::kOther, "OTHER"},
}};

bool ends_with(std::string_view text, std::string_view suffix) {
  return text.size() >= suffix.size() &&
         text.compare(text.size() - suffix.size(), suffix.size(), suffix) == 0;
}

CanonicalCategory category_field(const nlohmann::json& j, const char* key) {
  const std::string name = j.at(key).get<std::string>();
  auto c = parse_category(name);
  if (!c) throw Error(std::string("tag map: unknown category '") + name + "' in '" + key + "'");
  return *c;
}

}  // namespace

std::string_view to_string(CanonicalCategory category) {
  for (const auto& entry : kCategoryNames) {
    if (entry.category == category) return entry.name;
  }
  return "OTHER";
}

std::optional<CanonicalCategory> parse_category(std::string_view name) {
  for (const auto& entry : kCategoryNames) {
    if (entry.name == name) return entry.category;
  }
  return std::nullopt;
}

CanonicalCategory word_type(CanonicalCategory category) {
  switch (category) {
    case CanonicalCategory::kBoundNoun: return CanonicalCategory::kNominal;
    case CanonicalCategory::kNumeralDeterminer: return CanonicalCategory::kModifier;
    case CanonicalCategory::kAuxiliaryPredicate: return CanonicalCategory::kPredicate;
    case CanonicalCategory::kComma: return CanonicalCategory::kSymbol;
    default: return category;
  }
}

CanonicalTagMap::CanonicalTagMap(std::string tagger_name,
                                 std::map<std::string, CanonicalCategory> mapping,
                                 std::vector<ExclusionRule> exclusion_rules,
                                 std::set<std::string> bn_trivial_surfaces)
    : tagger_name_(std::move(tagger_name)),
      lookup_(mapping.begin(), mapping.end()),
      mapping_(std::move(mapping)),
      exclusion_rules_(std::move(exclusion_rules)),
      bn_trivial_surfaces_(std::move(bn_trivial_surfaces)) {}

CanonicalCategory CanonicalTagMap::category_of(std::string_view raw_tag) const {
  auto it = lookup_.find(raw_tag);
  return it == lookup_.end() ? CanonicalCategory::kOther : it->second;
}

CanonicalCategory categorize(const CanonicalTagMap& tagmap, const MorphemeToken& token) {
  return tagmap.category_of(token.tag);
}

bool is_excluded_pair(const CanonicalTagMap& tagmap, const MorphemeToken& prev,
                      const MorphemeToken& curr) {
  for (const auto& rule : tagmap.exclusion_rules()) {
    if (!rule.active()) continue;
    if (tagmap.category_of(prev.tag) != rule.prev_category) continue;
    if (tagmap.category_of(curr.tag) != rule.curr_category) continue;
    if (!rule.curr_surfaces.contains(curr.surface)) continue;
    for (const auto& suffix : rule.prev_surface_suffixes) {
      if (ends_with(prev.surface, suffix)) return true;
    }
  }
  return false;
}

CanonicalTagMap parse_tagmap(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(std::string("tag map: malformed JSON: ") + e.what());
  }
  try {
    std::string name = j.value("tagger_name", std::string{});
    std::map<std::string, CanonicalCategory> mapping;
    for (const auto& [tag, value] : j.at("mapping").items()) {
      auto c = parse_category(value.get<std::string>());
      if (!c) throw Error("tag map: unknown category '" + value.get<std::string>() + "' for tag '" + tag + "'");
      mapping.emplace(tag, *c);
    }
    std::vector<ExclusionRule> rules;
    if (j.contains("exclusion_rules")) {
      for (const auto& r : j.at("exclusion_rules")) {
        ExclusionRule rule;
        rule.rule_id = r.value("rule_id", std::string{});
        rule.prev_category = category_field(r, "prev_category");
        rule.curr_category = category_field(r, "curr_category");
        for (const auto& s : r.at("prev_surface_suffixes")) rule.prev_surface_suffixes.insert(s.get<std::string>());
        for (const auto& s : r.at("curr_surfaces")) rule.curr_surfaces.insert(s.get<std::string>());
        rules.push_back(std::move(rule));
      }
    }
    std::set<std::string> trivial;
    if (j.contains("bn_trivial_surfaces")) {
      for (const auto& s : j.at("bn_trivial_surfaces")) trivial.insert(s.get<std::string>());
    }
    return CanonicalTagMap(std::move(name), std::move(mapping), std::move(rules), std::move(trivial));
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("tag map: ") + e.what());
  }
}

CanonicalTagMap load_tagmap(const std::filesystem::path& path) {
  return parse_tagmap(read_file(path));
}

std::optional<CanonicalTagMap> preset_tagmap(std::string_view name) {
  if (name == "bareun") return parse_tagmap(presets::kBareunTagMap);
  if (name == "kkma") return parse_tagmap(presets::kKkmaTagMap);
  if (name == "synthetic") return parse_tagmap(presets::kSyntheticTagMap);
  return std::nullopt;
}

CanonicalTagMap resolve_tagmap(const std::string& name_or_path) {
  if (std::filesystem::exists(name_or_path)) return load_tagmap(name_or_path);
  if (auto preset = preset_tagmap(name_or_path)) return *std::move(preset);
  throw Error("tag map '" + name_or_path + "' is neither a file nor a preset (bareun, kkma, synthetic)");
}

}  // namespace kdetect
