#pragma once

#include <stdexcept>
#include <string>

namespace llm3 {

/// Base class for all errors raised by the framework.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Plan-language errors (actions module).
struct ParseError : Error {
  using Error::Error;
};
struct SchemaError : Error {
  using Error::Error;
};
struct ValidationError : Error {
  using Error::Error;
};

// World / planner contract violations. These signal a framework bug, not a
// bad plan coming from the language model.
struct UnknownObject : Error {
  using Error::Error;
};
struct PreconditionViolated : Error {
  using Error::Error;
};

// LLM backend errors.
struct MalformedResponse : Error {
  using Error::Error;
};
struct BudgetExhausted : Error {
  using Error::Error;
};
struct TransportError : Error {
  using Error::Error;
};
struct BackendError : Error {
  using Error::Error;
};

// Benchmark harness errors.
struct GenerationFailure : Error {
  using Error::Error;
};
struct ConfigError : Error {
  using Error::Error;
};
struct IoError : Error {
  using Error::Error;
};

}  // namespace llm3
