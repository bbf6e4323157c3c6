#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kdetect {

// Base of every error the library throws. Callers that only care about
// success or failure can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller violated a documented precondition (bad index, wrong dimension, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A JSONL line could not be parsed or does not follow the interchange schema.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// A well-formed record breaks a data-model invariant.
class ValidationError : public Error {
 public:
  ValidationError(std::size_t line, std::string document_id, std::string field,
                  const std::string& what)
      : Error("line " + std::to_string(line) + ": document '" + document_id +
              "', field '" + field + "': " + what),
        line_(line),
        document_id_(std::move(document_id)),
        field_(std::move(field)) {}
  std::size_t line() const { return line_; }
  const std::string& document_id() const { return document_id_; }
  const std::string& field() const { return field_; }

 private:
  std::size_t line_;
  std::string document_id_;
  std::string field_;
};

class EmptyCorpusError : public Error {
 public:
  using Error::Error;
};

// Training could not start (e.g. only one class present).
class TrainingError : public Error {
 public:
  using Error::Error;
};

// A required author group is absent from a corpus.
class MissingGroupError : public Error {
 public:
  explicit MissingGroupError(std::string group)
      : Error("missing author group '" + group + "'"), group_(std::move(group)) {}
  const std::string& group() const { return group_; }

 private:
  std::string group_;
};

// A distribution was requested over zero events.
class EmptyDistributionError : public Error {
 public:
  using Error::Error;
};

}  // namespace kdetect
