#pragma once

#include <stdexcept>
#include <string>

namespace qet {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --- circuit parsing -------------------------------------------------------

struct ParseError : Error {
  ParseError(const std::string& what, int line_) : Error(what), line(line_) {}
  int line;  // 1-based source line, 0 if not tied to a line
};

struct UnknownGate : ParseError {
  using ParseError::ParseError;
};

struct ArityMismatch : ParseError {
  using ParseError::ParseError;
};

struct BadQubitIndex : ParseError {
  using ParseError::ParseError;
};

struct EmptyCircuit : ParseError {
  EmptyCircuit() : ParseError("circuit has no statements", 0) {}
};

// --- table lookups ---------------------------------------------------------

struct MissingEntry : Error {
  using Error::Error;
};

struct NoDecomposition : Error {
  using Error::Error;
};

struct MissingFormula : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

// --- tracing / reporting ---------------------------------------------------

struct InvalidPolicy : Error {
  using Error::Error;
};

struct ZeroOrig : Error {
  ZeroOrig() : Error("savings undefined for a zero baseline block count") {}
};

// --- oracle ----------------------------------------------------------------

struct TooManyEvents : Error {
  using Error::Error;
};

}  // namespace qet
