// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace exactnn {

/// Base class of every error the library throws on contract violations.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

class ShapeMismatchError : public Error {
 public:
  explicit ShapeMismatchError(const std::string& what) : Error(what) {}
};

class InexactActivationError : public Error {
 public:
  explicit InexactActivationError(const std::string& what) : Error(what) {}
};

class InconsistentDataError : public Error {
 public:
  explicit InconsistentDataError(const std::string& what) : Error(what) {}
};

class DecodeError : public Error {
 public:
  explicit DecodeError(const std::string& what) : Error(what) {}
};

class DuplicateKeyError : public Error {
 public:
  explicit DuplicateKeyError(const std::string& what) : Error(what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

class InsufficientClassesError : public Error {
 public:
  explicit InsufficientClassesError(const std::string& what) : Error(what) {}
};

class AmbiguousAcceptError : public Error {
 public:
  explicit AmbiguousAcceptError(const std::string& what) : Error(what) {}
};

}  // namespace exactnn
