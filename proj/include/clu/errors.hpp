#pragma once

#include <stdexcept>
#include <string>

namespace clu {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& message) : std::runtime_error(message) {}
};

/// A caller violated an operation's precondition (empty text, bad dimension,
/// unknown id, missing expected output, ...).
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

/// The backing reasoner (or embedding endpoint) failed after retries.
class BackendError : public Error {
 public:
  explicit BackendError(const std::string& message, long status = 0)
      : Error(message), status_(status) {}
  long status() const { return status_; }

 private:
  long status_;
};

/// A scripted backend ran out of matching steps. Almost always a test bug.
class ScriptExhaustedError : public BackendError {
 public:
  using BackendError::BackendError;
};

/// A structured file (checkpoint, script, config, dataset) failed to parse.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A versioned file carries a schema this build does not understand.
class SchemaVersionError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// A config file or flag combination is unusable.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Template asset problems: missing file, unknown placeholder, unbound
/// placeholder at render time.
class TemplateError : public Error {
 public:
  using Error::Error;
};

// Agent-level failures, one per role surface. They all mean "the reasoner
// responded, but not in the role's grammar, and repair retries are
// exhausted" (or the backend failed underneath).

class AlignmentError : public Error {
 public:
  using Error::Error;
};

class SearchError : public Error {
 public:
  using Error::Error;
};

class PromptGenerationError : public Error {
 public:
  using Error::Error;
};

class ExecutionError : public Error {
 public:
  using Error::Error;
};

class ComparisonError : public Error {
 public:
  using Error::Error;
};

class FeedbackError : public Error {
 public:
  using Error::Error;
};

class InsightError : public Error {
 public:
  using Error::Error;
};

class PruningError : public Error {
 public:
  using Error::Error;
};

class GenerationError : public Error {
 public:
  using Error::Error;
};

}  // namespace clu
