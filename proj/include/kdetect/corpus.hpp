#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kdetect {

// One morpheme as emitted by a POS tagger. `eojeol_index` is the position of
// the space-delimited word (eojeol) that contains it, counted within the
// sentence.
struct MorphemeToken {
  std::string surface;
  std::string tag;
  std::size_t eojeol_index = 0;

  bool operator==(const MorphemeToken&) const = default;
};

struct Sentence {
  std::vector<MorphemeToken> tokens;

  std::size_t size() const { return tokens.size(); }
  const MorphemeToken& operator[](std::size_t i) const { return tokens[i]; }
  std::size_t eojeol_count() const {
    return tokens.empty() ? 0 : tokens.back().eojeol_index + 1;
  }

  bool operator==(const Sentence&) const = default;
};

enum class Genre { kEssay, kPoetry, kPaperAbstract };

std::string_view to_string(Genre genre);
std::optional<Genre> parse_genre(std::string_view name);

inline constexpr std::string_view kHumanAuthor = "human";

struct TaggedDocument {
  std::string id;
  Genre genre = Genre::kEssay;
  std::string author;
  int label = 0;  // 0 = human-written, 1 = LLM-generated
  std::vector<Sentence> sentences;

  bool operator==(const TaggedDocument&) const = default;
};

struct Corpus {
  std::vector<TaggedDocument> documents;

  std::size_t size() const { return documents.size(); }
  bool empty() const { return documents.empty(); }

  bool operator==(const Corpus&) const = default;
};

// True iff a space separates token `index` from token `index - 1`.
// Throws PreconditionError unless 0 < index < sentence.size().
bool space_before(const Sentence& sentence, std::size_t index);

// Checks every document-level invariant and throws ValidationError on the
// first violation. `line` is only used for the error message.
void validate_document(const TaggedDocument& doc, std::size_t line = 0);

// Checks document invariants plus corpus-wide id uniqueness.
void validate_corpus(const Corpus& corpus);

// Receives loader warnings (unknown fields, ...). When null, warnings are
// written to std::cerr.
using WarningList = std::vector<std::string>;

Corpus parse_corpus(std::istream& in, WarningList* warnings = nullptr);
Corpus load_corpus(const std::filesystem::path& path, WarningList* warnings = nullptr);

// One JSON object per line, field order id, genre, author, label, sentences.
std::string document_to_json_line(const TaggedDocument& doc);
void write_corpus(const Corpus& corpus, std::ostream& out);
void write_corpus(const Corpus& corpus, const std::filesystem::path& path);

// Documents of the given genre, order preserved.
Corpus filter_genre(const Corpus& corpus, Genre genre);

}  // namespace kdetect
