#pragma once

#include <stdexcept>
#include <string>

namespace subgrad {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed data: wrong dimension, non-finite entries, mismatched lengths.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A scalar parameter outside its admissible range (eta <= 0, alpha <= 2, ...).
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// The requested combination is well formed but not supported.
class Unsupported : public Error {
 public:
  using Error::Error;
};

/// A scripted cost stream ran out of vectors.
class StreamEnd : public Error {
 public:
  using Error::Error;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

/// A gap-dependent bound was evaluated with a non-positive gap.
class UndefinedGap : public Error {
 public:
  using Error::Error;
};

/// The unprojected iterate is queried before any cost has been received.
class NotYetDefined : public Error {
 public:
  using Error::Error;
};

class FileError : public Error {
 public:
  FileError(const std::string& path, const std::string& what)
      : Error(path + ": " + what), path_(path) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace subgrad
