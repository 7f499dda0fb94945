// Copyright 2026 The Texkit Authors.
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

#ifndef TEXKIT_ERRORS_H_
#define TEXKIT_ERRORS_H_

#include <stdexcept>
#include <string>

namespace texkit {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EncodingError : public Error {
 public:
  using Error::Error;
};

// Malformed input file content. Carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string &msg, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class LookupError : public Error {
 public:
  using Error::Error;
};

class LoadError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// Training data problems (unknown tags, malformed BIO, empty corpus).
class DataError : public ParseError {
 public:
  using ParseError::ParseError;
};

class CompileError : public ParseError {
 public:
  using ParseError::ParseError;
};

class NormalizationError : public Error {
 public:
  using Error::Error;
};

}  // namespace texkit

#endif  // TEXKIT_ERRORS_H_
