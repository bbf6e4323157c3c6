#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "kdetect/corpus.hpp"
#include "kdetect/tagmap.hpp"

namespace testing {

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(KDETECT_FIXTURES) / name;
}

inline nlohmann::json load_json(const std::string& name) {
  std::ifstream in(fixture(name));
  return nlohmann::json::parse(in);
}

// "나/NP+는/JX 학교/NNG+에/JKB": eojeols split on spaces, morphemes on '+'.
inline kdetect::Sentence sentence(const std::string& text) {
  kdetect::Sentence s;
  std::istringstream words(text);
  std::string eojeol;
  std::size_t index = 0;
  while (words >> eojeol) {
    std::size_t start = 0;
    while (start <= eojeol.size()) {
      auto plus = eojeol.find('+', start);
      if (plus == start) plus = eojeol.find('+', start + 1);  // a literal "+" surface
      std::string m = eojeol.substr(start, plus == std::string::npos ? std::string::npos : plus - start);
      auto slash = m.rfind('/');
      s.tokens.push_back({m.substr(0, slash), m.substr(slash + 1), index});
      if (plus == std::string::npos) break;
      start = plus + 1;
    }
    ++index;
  }
  return s;
}

inline kdetect::TaggedDocument document(const std::vector<std::string>& sentences,
                                        std::string id = "doc", std::string author = "human") {
  kdetect::TaggedDocument d;
  d.id = std::move(id);
  d.label = author == kdetect::kHumanAuthor ? 0 : 1;
  d.author = std::move(author);
  for (const auto& s : sentences) d.sentences.push_back(sentence(s));
  return d;
}

inline const kdetect::CanonicalTagMap& bareun() {
  static const kdetect::CanonicalTagMap tm = *kdetect::preset_tagmap("bareun");
  return tm;
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("kdetect_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

// Random short documents drawn from a small bareun tag inventory, for property tests.
inline kdetect::TaggedDocument random_document(std::mt19937_64& rng, std::size_t max_tokens,
                                               const std::string& id) {
  static const std::vector<std::pair<std::string, std::string>> inventory = {
      {"집", "NNG"}, {"나", "NP"},  {"두", "MMN"}, {"개", "NNB"}, {"수", "NNB"},
      {"가", "VV"},  {"좋", "VA"},  {"어", "EC"},  {"아", "EC"},  {"고", "EC"},
      {"지", "VX"},  {"보", "VX"},  {"다", "EF"},  {"는", "JX"},  {"를", "JKO"},
      {",", "SP"},   {".", "SF"},   {"잘", "MAG"}, {"들", "XSN"}, {"AI", "SL"},
  };
  kdetect::TaggedDocument d;
  d.id = id;
  d.author = "human";
  std::uniform_int_distribution<int> sentences(1, 3);
  std::uniform_int_distribution<std::size_t> pick(0, inventory.size() - 1);
  std::bernoulli_distribution space(0.4);
  const int n = sentences(rng);
  std::size_t budget = max_tokens;
  for (int k = 0; k < n && budget > 0; ++k) {
    kdetect::Sentence s;
    std::uniform_int_distribution<std::size_t> len(1, std::min<std::size_t>(budget, 12));
    const std::size_t length = len(rng);
    std::size_t eojeol = 0;
    for (std::size_t i = 0; i < length; ++i) {
      if (i > 0 && space(rng)) ++eojeol;
      const auto& [surface, tag] = inventory[pick(rng)];
      s.tokens.push_back({surface, tag, eojeol});
    }
    budget -= length;
    d.sentences.push_back(std::move(s));
  }
  return d;
}

}  // namespace testing
