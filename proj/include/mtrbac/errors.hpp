// Copyright 2026 The mtrbac Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MTRBAC_ERRORS_HPP_
#define MTRBAC_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace mtrbac {

// Root of the engine's error hierarchy.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Construction-time invariant violation on a domain value.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class CycleError : public Error {
 public:
  using Error::Error;
};

class DuplicateRoleError : public Error {
 public:
  using Error::Error;
};

class UnknownRoleError : public Error {
 public:
  using Error::Error;
};

class UnknownSubjectError : public Error {
 public:
  using Error::Error;
};

class DuplicateTenantError : public Error {
 public:
  using Error::Error;
};

class UnknownTenantError : public Error {
 public:
  using Error::Error;
};

// Parse-time error carrying a document position. Line and column are
// 1-based; a column of 0 means "whole line" (used by the line-oriented
// text formats).
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column)
      : Error(format_message(message, line, column)),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  static std::string format_message(const std::string& message, int line,
                                    int column) {
    std::string out = std::to_string(line);
    if (column > 0) {
      out += ':';
      out += std::to_string(column);
    }
    out += ": ";
    out += message;
    return out;
  }

  int line_;
  int column_;
};

class WellFormednessError : public ParseError {
 public:
  using ParseError::ParseError;
};

class UnsupportedElementError : public ParseError {
 public:
  using ParseError::ParseError;
};

class UnknownCombiningAlgError : public ParseError {
 public:
  using ParseError::ParseError;
};

class TypeMismatchError : public ParseError {
 public:
  using ParseError::ParseError;
};

class RequestInvalidError : public ParseError {
 public:
  using ParseError::ParseError;
};

// Thrown by the evaluator when handed a repository that does not pass
// validate_repository.
class RepositoryInvalidError : public Error {
 public:
  using Error::Error;
};

}  // namespace mtrbac

#endif  // MTRBAC_ERRORS_HPP_
