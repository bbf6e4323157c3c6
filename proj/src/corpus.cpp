#include "kdetect/corpus.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "kdetect/error.hpp"
#include "kdetect/format.hpp"

namespace kdetect {

using nlohmann::json;
using nlohmann::ordered_json;

std::string_view to_string(Genre genre) {
  switch (genre) {
    case Genre::kEssay: return "essay";
    case Genre::kPoetry: return "poetry";
    case Genre::kPaperAbstract: return "paper_abstract";
  }
  return "essay";
}

std::optional<Genre> parse_genre(std::string_view name) {
  if (name == "essay") return Genre::kEssay;
  if (name == "poetry") return Genre::kPoetry;
  if (name == "paper_abstract") return Genre::kPaperAbstract;
  return std::nullopt;
}

bool space_before(const Sentence& sentence, std::size_t index) {
  if (index == 0 || index >= sentence.size()) {
    throw PreconditionError("space_before: index " + std::to_string(index) +
                            " outside (0, " + std::to_string(sentence.size()) + ")");
  }
  return sentence.tokens[index].eojeol_index > sentence.tokens[index - 1].eojeol_index;
}

void validate_document(const TaggedDocument& doc, std::size_t line) {
  if (doc.id.empty()) throw ValidationError(line, doc.id, "id", "must be non-empty");
  if (doc.label != 0 && doc.label != 1) {
    throw ValidationError(line, doc.id, "label", "must be 0 or 1");
  }
  const bool human = doc.author == kHumanAuthor;
  if (human != (doc.label == 0)) {
    throw ValidationError(line, doc.id, "label",
                          "label " + std::to_string(doc.label) +
                              " inconsistent with author '" + doc.author + "'");
  }
  if (doc.sentences.empty()) {
    throw ValidationError(line, doc.id, "sentences", "document has no sentences");
  }
  for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
    const auto& tokens = doc.sentences[s].tokens;
    const std::string where = "sentences[" + std::to_string(s) + "]";
    if (tokens.empty()) throw ValidationError(line, doc.id, where, "sentence has no tokens");
    for (std::size_t t = 0; t < tokens.size(); ++t) {
      const auto& tok = tokens[t];
      const std::string tok_where = where + "[" + std::to_string(t) + "]";
      if (tok.surface.empty()) throw ValidationError(line, doc.id, tok_where + ".surface", "empty");
      if (tok.tag.empty()) throw ValidationError(line, doc.id, tok_where + ".tag", "empty");
      if (t == 0) {
        if (tok.eojeol_index != 0) {
          throw ValidationError(line, doc.id, tok_where + ".eojeol", "first token must be in eojeol 0");
        }
      } else {
        const std::size_t prev = tokens[t - 1].eojeol_index;
        if (tok.eojeol_index != prev && tok.eojeol_index != prev + 1) {
          throw ValidationError(line, doc.id, tok_where + ".eojeol",
                                "eojeol index must stay or advance by one");
        }
      }
    }
  }
}

void validate_corpus(const Corpus& corpus) {
  std::unordered_map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < corpus.documents.size(); ++i) {
    const auto& doc = corpus.documents[i];
    validate_document(doc, i + 1);
    if (!seen.emplace(doc.id, i + 1).second) {
      throw ValidationError(i + 1, doc.id, "id", "duplicate id");
    }
  }
}

namespace {

void warn(WarningList* warnings, std::string message) {
  if (warnings) {
    warnings->push_back(std::move(message));
  } else {
    std::cerr << "warning: " << message << "\n";
  }
}

const json& require(const json& obj, const char* key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(line, std::string("missing field '") + key + "'");
  return *it;
}

std::string require_string(const json& obj, const char* key, std::size_t line) {
  const json& v = require(obj, key, line);
  if (!v.is_string()) throw ParseError(line, std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

MorphemeToken parse_token(const json& j, std::size_t line, WarningList* warnings) {
  if (!j.is_object()) throw ParseError(line, "token must be an object");
  MorphemeToken tok;
  tok.surface = require_string(j, "surface", line);
  tok.tag = require_string(j, "tag", line);
  const json& e = require(j, "eojeol", line);
  if (!e.is_number_integer() || e.get<long long>() < 0) {
    throw ParseError(line, "field 'eojeol' must be a non-negative integer");
  }
  tok.eojeol_index = e.get<std::size_t>();
  for (const auto& [key, _] : j.items()) {
    if (key != "surface" && key != "tag" && key != "eojeol") {
      warn(warnings, "line " + std::to_string(line) + ": ignoring unknown token field '" + key + "'");
    }
  }
  return tok;
}

TaggedDocument parse_document(const std::string& text, std::size_t line, WarningList* warnings) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(line, std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError(line, "record must be a JSON object");

  TaggedDocument doc;
  doc.id = require_string(j, "id", line);
  const std::string genre = require_string(j, "genre", line);
  auto g = parse_genre(genre);
  if (!g) throw ParseError(line, "unknown genre '" + genre + "'");
  doc.genre = *g;
  doc.author = require_string(j, "author", line);
  const json& label = require(j, "label", line);
  if (!label.is_number_integer() || (label.get<long long>() != 0 && label.get<long long>() != 1)) {
    throw ParseError(line, "field 'label' must be 0 or 1");
  }
  doc.label = label.get<int>();
  const json& sentences = require(j, "sentences", line);
  if (!sentences.is_array()) throw ParseError(line, "field 'sentences' must be an array");
  for (const auto& s : sentences) {
    if (!s.is_array()) throw ParseError(line, "each sentence must be an array of tokens");
    Sentence sentence;
    sentence.tokens.reserve(s.size());
    for (const auto& t : s) sentence.tokens.push_back(parse_token(t, line, warnings));
    doc.sentences.push_back(std::move(sentence));
  }
  for (const auto& [key, _] : j.items()) {
    if (key != "id" && key != "genre" && key != "author" && key != "label" && key != "sentences") {
      warn(warnings, "line " + std::to_string(line) + ": ignoring unknown field '" + key + "'");
    }
  }
  return doc;
}

bool is_blank(const std::string& s) {
  return s.find_first_not_of(" \t\r\n") == std::string::npos;
}

}  // namespace

Corpus parse_corpus(std::istream& in, WarningList* warnings) {
  Corpus corpus;
  std::unordered_map<std::string, std::size_t> seen;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (is_blank(text)) continue;
    TaggedDocument doc = parse_document(text, line, warnings);
    validate_document(doc, line);
    auto [it, inserted] = seen.emplace(doc.id, line);
    if (!inserted) {
      throw ValidationError(line, doc.id, "id",
                            "duplicate id (first seen on line " + std::to_string(it->second) + ")");
    }
    corpus.documents.push_back(std::move(doc));
  }
  if (corpus.empty()) throw EmptyCorpusError("corpus contains no documents");
  return corpus;
}

Corpus load_corpus(const std::filesystem::path& path, WarningList* warnings) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open corpus '" + path.string() + "'");
  return parse_corpus(in, warnings);
}

std::string document_to_json_line(const TaggedDocument& doc) {
  ordered_json j;
  j["id"] = doc.id;
  j["genre"] = std::string(to_string(doc.genre));
  j["author"] = doc.author;
  j["label"] = doc.label;
  ordered_json sentences = ordered_json::array();
  for (const auto& s : doc.sentences) {
    ordered_json tokens = ordered_json::array();
    for (const auto& t : s.tokens) {
      ordered_json tok;
      tok["surface"] = t.surface;
      tok["tag"] = t.tag;
      tok["eojeol"] = t.eojeol_index;
      tokens.push_back(std::move(tok));
    }
    sentences.push_back(std::move(tokens));
  }
  j["sentences"] = std::move(sentences);
  return j.dump();
}

void write_corpus(const Corpus& corpus, std::ostream& out) {
  for (const auto& doc : corpus.documents) out << document_to_json_line(doc) << '\n';
}

void write_corpus(const Corpus& corpus, const std::filesystem::path& path) {
  std::ostringstream out;
  write_corpus(corpus, out);
  write_file_atomic(path, out.str());
}

Corpus filter_genre(const Corpus& corpus, Genre genre) {
  Corpus out;
  for (const auto& doc : corpus.documents) {
    if (doc.genre == genre) out.documents.push_back(doc);
  }
  return out;
}

}  // namespace kdetect
