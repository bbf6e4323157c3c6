#include "kdetect/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string_view>

#include <json.hpp>

#include "kdetect/error.hpp"
#include "kdetect/format.hpp"
#include "kdetect/random.hpp"

namespace kdetect {

namespace {

constexpr std::array<std::string_view, 24> kSyllables = {
    "가", "나", "다", "라", "마", "바", "사", "아", "자", "차", "카", "타",
    "파", "하", "고", "노", "도", "로", "모", "보", "소", "오", "조", "호"};
constexpr std::array<std::string_view, 5> kNumerals = {"한", "두", "세", "네", "다섯"};
constexpr std::array<std::string_view, 6> kBoundNouns = {"개", "명", "것", "수", "번", "마리"};
constexpr std::array<std::string_view, 4> kEndings = {"어", "아", "고", "게"};
constexpr std::array<std::string_view, 6> kAuxiliaries = {"있", "보", "주", "지", "싶", "버리"};

struct Piece {
  std::string surface;
  std::string tag;
  bool new_eojeol = false;
};

template <std::size_t N>
std::string pick(SplitMix64& rng, const std::array<std::string_view, N>& pool) {
  return std::string(pool[rng.below(N)]);
}

std::string content_surface(SplitMix64& rng) {
  return pick(rng, kSyllables) + pick(rng, kSyllables);
}

std::string content_tag(SplitMix64& rng, int vocab) {
  return "T" + std::to_string(rng.below(static_cast<std::uint64_t>(vocab)));
}

// Appends one unit (a word, an MMN+BN phrase, a bound-noun phrase or a
// predicate+ending+VX chain) and returns the number of morphemes added.
int append_unit(SplitMix64& rng, const StyleProfile& p, std::vector<Piece>& out) {
  const double u = rng.uniform();
  if (u < 0.10) {
    out.push_back({pick(rng, kNumerals), "MMN", true});
    out.push_back({pick(rng, kBoundNouns), "NNB", rng.bernoulli(p.bn_space_prob)});
    return 2;
  }
  if (u < 0.22) {
    out.push_back({content_surface(rng), content_tag(rng, p.tag_vocab_size), true});
    out.push_back({pick(rng, kBoundNouns), "NNB", rng.bernoulli(p.bn_space_prob)});
    return 2;
  }
  if (u < 0.34) {
    out.push_back({content_surface(rng), content_tag(rng, p.tag_vocab_size), true});
    const std::string ending = pick(rng, kEndings);
    const std::string aux = pick(rng, kAuxiliaries);
    const bool prohibited = (ending == "아" || ending == "어") && aux == "지";
    const bool spaced = rng.bernoulli(p.vx_space_prob);
    out.push_back({ending, "EC", false});
    out.push_back({aux, "VX", !prohibited && spaced});
    return 3;
  }
  out.push_back({content_surface(rng), content_tag(rng, p.tag_vocab_size), true});
  if (rng.bernoulli(0.5)) {
    out.push_back({content_surface(rng), content_tag(rng, p.tag_vocab_size), false});
    return 2;
  }
  return 1;
}

Sentence generate_sentence(SplitMix64& rng, const StyleProfile& p) {
  const int target = static_cast<int>(
      rng.between(p.sentence_length_range.first, p.sentence_length_range.second));
  std::vector<Piece> pieces;
  int morphemes = 0;
  while (morphemes < target) morphemes += append_unit(rng, p, pieces);

  // Commas go after the morpheme that ends an eojeol, so inserting them never
  // changes the spacing in front of any morpheme.
  std::vector<int> boundaries;  // b = morphemes before a candidate comma
  for (std::size_t i = 1; i < pieces.size(); ++i) {
    if (pieces[i].new_eojeol) boundaries.push_back(static_cast<int>(i));
  }
  std::vector<std::pair<int, bool>> chosen;  // boundary, clause junction
  if (rng.bernoulli(p.comma_sentence_prob) && !boundaries.empty()) {
    const double per_sentence =
        p.comma_sentence_prob > 0.0 ? p.comma_per_morpheme / p.comma_sentence_prob : 0.0;
    const double expected = per_sentence * morphemes;
    int k = static_cast<int>(std::floor(expected));
    if (rng.uniform() < expected - std::floor(expected)) ++k;
    k = std::clamp(k, 1, static_cast<int>(boundaries.size()));
    for (int c = 0; c < k; ++c) {
      const double where = morphemes * (p.relative_position_bias + (rng.uniform() - 0.5) * 0.3);
      const bool junction = !rng.bernoulli(p.comma_context_diversity);
      auto best = boundaries.end();
      double best_gap = 0.0;
      for (int pass = junction ? 0 : 1; pass < 2 && best == boundaries.end(); ++pass) {
        for (auto it = boundaries.begin(); it != boundaries.end(); ++it) {
          if (pass == 0 && pieces[static_cast<std::size_t>(*it)].tag[0] != 'T') continue;
          const double gap = std::abs(*it - where);
          if (best == boundaries.end() || gap < best_gap) {
            best = it;
            best_gap = gap;
          }
        }
      }
      const bool retag = junction && pieces[static_cast<std::size_t>(*best)].tag[0] == 'T';
      chosen.emplace_back(*best, retag);
      boundaries.erase(best);
    }
  }
  std::sort(chosen.begin(), chosen.end());

  Sentence s;
  std::size_t eojeol = 0;
  auto next_comma = chosen.begin();
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (next_comma != chosen.end() && static_cast<int>(i) == next_comma->first) {
      if (next_comma->second) {
        s.tokens.push_back({"고", "EC", eojeol});
        pieces[i].tag = "T0";
      }
      s.tokens.push_back({",", "SP", eojeol});
      ++next_comma;
    }
    if (i > 0 && pieces[i].new_eojeol) ++eojeol;
    s.tokens.push_back({std::move(pieces[i].surface), std::move(pieces[i].tag), eojeol});
  }
  s.tokens.push_back({".", "SF", eojeol});
  return s;
}

void check_probability(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) throw PreconditionError(std::string("profile: ") + name + " must be in [0, 1]");
}

std::pair<int, int> range_field(const nlohmann::json& j, const char* key) {
  const auto v = j.at(key).get<std::vector<int>>();
  if (v.size() != 2) throw Error(std::string("profile: '") + key + "' must be [min, max]");
  return {v[0], v[1]};
}

}  // namespace

void StyleProfile::validate() const {
  if (author.empty()) throw PreconditionError("profile: author must be non-empty");
  check_probability(comma_sentence_prob, "comma_sentence_prob");
  check_probability(comma_per_morpheme, "comma_per_morpheme");
  check_probability(relative_position_bias, "relative_position_bias");
  check_probability(comma_context_diversity, "comma_context_diversity");
  check_probability(bn_space_prob, "bn_space_prob");
  check_probability(vx_space_prob, "vx_space_prob");
  if (tag_vocab_size < 1 || tag_vocab_size > kMaxSyntheticVocab) {
    throw PreconditionError("profile: tag_vocab_size must be in [1, 48]");
  }
  for (auto [lo, hi] : {sentence_length_range, sentence_count_range}) {
    if (lo < 1 || lo > hi) throw PreconditionError("profile: ranges need 1 <= min <= max");
  }
}

std::vector<TaggedDocument> generate_documents(const StyleProfile& profile, int n) {
  profile.validate();
  if (n < 0) throw PreconditionError("generate_documents: n must be non-negative");
  SplitMix64 rng(profile.seed);
  std::vector<TaggedDocument> docs;
  docs.reserve(static_cast<std::size_t>(n));
  const int label = profile.author == kHumanAuthor ? 0 : 1;
  for (int i = 0; i < n; ++i) {
    TaggedDocument doc;
    doc.id = profile.author + "-" + std::string(to_string(profile.genre)) + "-" +
             std::to_string(profile.seed) + "-" + std::to_string(i);
    doc.genre = profile.genre;
    doc.author = profile.author;
    doc.label = label;
    const auto sentences = rng.between(profile.sentence_count_range.first,
                                       profile.sentence_count_range.second);
    for (std::int64_t s = 0; s < sentences; ++s) doc.sentences.push_back(generate_sentence(rng, profile));
    docs.push_back(std::move(doc));
  }
  return docs;
}

Corpus generate_corpus(const StyleProfile& human, const StyleProfile& llm, int n_per_class) {
  if (n_per_class < 1) throw PreconditionError("generate_corpus: n_per_class must be >= 1");
  if (human.author != kHumanAuthor) throw PreconditionError("generate_corpus: first profile must be 'human'");
  if (llm.author == kHumanAuthor) throw PreconditionError("generate_corpus: second profile must not be 'human'");
  Corpus corpus;
  corpus.documents = generate_documents(human, n_per_class);
  for (auto& doc : generate_documents(llm, n_per_class)) corpus.documents.push_back(std::move(doc));
  return corpus;
}

StyleProfile calibrated_human_profile(std::uint64_t seed) {
  StyleProfile p;
  p.author = std::string(kHumanAuthor);
  p.comma_sentence_prob = 0.2631;
  p.comma_per_morpheme = 0.0113;
  p.relative_position_bias = 0.35;
  p.comma_context_diversity = 0.2;
  p.bn_space_prob = 0.75;
  p.vx_space_prob = 0.55;
  p.tag_vocab_size = 24;
  p.sentence_length_range = {16, 30};
  p.sentence_count_range = {8, 16};
  p.seed = seed;
  return p;
}

StyleProfile calibrated_llm_profile(std::string author, std::uint64_t seed) {
  StyleProfile p;
  p.author = std::move(author);
  p.comma_sentence_prob = 0.6103;
  p.comma_per_morpheme = 0.0256;
  p.relative_position_bias = 0.5;
  p.bn_space_prob = 0.97;
  p.vx_space_prob = 0.9;
  p.tag_vocab_size = 8;
  p.sentence_length_range = {36, 56};
  p.sentence_count_range = {8, 16};
  p.seed = seed;
  return p;
}

Corpus generate_ood_corpus(int n_human, int n_per_generator, std::uint64_t seed) {
  if (n_human < 2 || n_per_generator < 1) {
    throw PreconditionError("generate_ood_corpus: need >= 2 human and >= 1 generator documents");
  }
  Corpus corpus;
  corpus.documents = generate_documents(calibrated_human_profile(seed), n_human);

  struct Variant {
    const char* author;
    double inclusion;
    double usage;
    int vocab;
  };
  constexpr std::array<Variant, 4> kVariants = {{
      {"gpt-4o", 0.6103, 0.0256, 8},
      {"solar", 0.55, 0.0230, 10},
      {"qwen2", 0.65, 0.0270, 7},
      {"llama3.1", 0.50, 0.0210, 12},
  }};
  std::uint64_t offset = 1;
  for (const auto& v : kVariants) {
    StyleProfile p = calibrated_llm_profile(v.author, seed + offset++);
    p.comma_sentence_prob = v.inclusion;
    p.comma_per_morpheme = v.usage;
    p.tag_vocab_size = v.vocab;
    for (auto& doc : generate_documents(p, n_per_generator)) corpus.documents.push_back(std::move(doc));
  }
  return corpus;
}

std::string profile_to_json(const StyleProfile& p) {
  nlohmann::ordered_json j;
  j["author"] = p.author;
  j["genre"] = std::string(to_string(p.genre));
  j["comma_sentence_prob"] = p.comma_sentence_prob;
  j["comma_per_morpheme"] = p.comma_per_morpheme;
  j["relative_position_bias"] = p.relative_position_bias;
  j["comma_context_diversity"] = p.comma_context_diversity;
  j["bn_space_prob"] = p.bn_space_prob;
  j["vx_space_prob"] = p.vx_space_prob;
  j["tag_vocab_size"] = p.tag_vocab_size;
  j["sentence_length_range"] = {p.sentence_length_range.first, p.sentence_length_range.second};
  j["sentence_count_range"] = {p.sentence_count_range.first, p.sentence_count_range.second};
  j["seed"] = p.seed;
  j["rng"] = SplitMix64::kAlgorithm;
  return j.dump(2) + "\n";
}

StyleProfile profile_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    if (j.contains("rng") && j.at("rng").get<std::string>() != SplitMix64::kAlgorithm) {
      throw Error("profile: unsupported rng '" + j.at("rng").get<std::string>() + "'");
    }
    StyleProfile p;
    p.author = j.at("author").get<std::string>();
    if (j.contains("genre")) {
      auto g = parse_genre(j.at("genre").get<std::string>());
      if (!g) throw Error("profile: unknown genre");
      p.genre = *g;
    }
    p.comma_sentence_prob = j.at("comma_sentence_prob").get<double>();
    p.comma_per_morpheme = j.at("comma_per_morpheme").get<double>();
    p.relative_position_bias = j.at("relative_position_bias").get<double>();
    p.comma_context_diversity = j.value("comma_context_diversity", 1.0);
    p.bn_space_prob = j.at("bn_space_prob").get<double>();
    p.vx_space_prob = j.at("vx_space_prob").get<double>();
    p.tag_vocab_size = j.at("tag_vocab_size").get<int>();
    p.sentence_length_range = range_field(j, "sentence_length_range");
    if (j.contains("sentence_count_range")) p.sentence_count_range = range_field(j, "sentence_count_range");
    p.seed = j.at("seed").get<std::uint64_t>();
    p.validate();
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("profile: ") + e.what());
  }
}

StyleProfile load_profile(const std::filesystem::path& path) {
  return profile_from_json(read_file(path));
}

}  // namespace kdetect
