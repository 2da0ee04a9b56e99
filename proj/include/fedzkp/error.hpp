#pragma once

#include <stdexcept>
#include <string>

namespace fedzkp {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not conform (vector lengths, matrix dimensions).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A parameter lies outside its documented domain.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Witness extraction from transcripts failed.
class ExtractionError : public Error {
 public:
  using Error::Error;
};

/// Malformed or out-of-order protocol message, or a malformed file.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

/// The byte stream to the peer broke (EOF, reset, refused connection).
class TransportError : public Error {
 public:
  using Error::Error;
};

/// Training produced a non-finite loss.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace fedzkp
