#pragma once

#include <stdexcept>
#include <string>

namespace seedsel {

// Every failure the library reports derives from Error. The CLI maps the
// concrete types onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid parameters (schedule ranges, empty mixtures, bad step counts...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Two images or tensors that must share a geometry do not.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Operation not valid in the current state, e.g. stepping a finished trajectory.
class StateError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Sidecar decoding failures. Kept distinct so callers can tell a damaged
// record from a foreign or short one.
class FormatError : public Error {
 public:
  using Error::Error;
};

class CorruptionError : public FormatError {
 public:
  using FormatError::FormatError;
};

class TruncationError : public FormatError {
 public:
  using FormatError::FormatError;
};

class SemanticError : public FormatError {
 public:
  using FormatError::FormatError;
};

class EncodingError : public Error {
 public:
  using Error::Error;
};

}  // namespace seedsel
