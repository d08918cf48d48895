#pragma once

#include <stdexcept>
#include <string>

namespace arrowkernel {

// Base class of every error raised by the library. The C API maps each
// subclass onto one ak_status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Word text is not a whitespace-separated list of signed integers.
class SyntaxError : public Error {
 public:
  using Error::Error;
};

// A letter occurs other than exactly once as Start and once as End.
class LetterCountError : public Error {
 public:
  using Error::Error;
};

class ZeroLetterError : public Error {
 public:
  using Error::Error;
};

class UnknownLetterError : public Error {
 public:
  using Error::Error;
};

// Arrow-count window with b > d (or b < 1).
class WindowError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class InvalidSiteError : public Error {
 public:
  using Error::Error;
};

// Malformed JSONL / CSV / JSON input, or an unreadable file.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace arrowkernel
