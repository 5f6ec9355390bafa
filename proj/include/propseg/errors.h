// Copyright 2026 The PropSeg Authors.
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

#ifndef PROPSEG_ERRORS_H_
#define PROPSEG_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace propseg {

// Base class for all errors raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A value violates a domain invariant (empty proposition, index out of
// range, overlapping token classes, ...).
class InvariantError : public Error {
 public:
  using Error::Error;
};

// Two inputs that must describe the same items do not line up.
class AlignmentError : public Error {
 public:
  using Error::Error;
};

// Input text could not be parsed. Line is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string &message, std::size_t line = 0)
      : Error(line == 0 ? message
                        : "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Marker structure of an encoded sequence is broken.
class MalformedMarkupError : public ParseError {
 public:
  using ParseError::ParseError;
};

// Decoded token stream departs from the expected sentence tokens.
class TokenDriftError : public Error {
 public:
  TokenDriftError(std::size_t position, const std::string &message)
      : Error(message), position_(position) {}

  // Index into the expected token list of the first divergence.
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Rating matrix rows do not sum to the rater count, or similar.
class MalformedRatingsError : public Error {
 public:
  using Error::Error;
};

// The brute-force matching oracle was asked to solve a too large instance.
class OracleSizeError : public Error {
 public:
  using Error::Error;
};

// Aggregation over a hypothesis that has no propositions.
class EmptyHypothesisError : public Error {
 public:
  using Error::Error;
};

}  // namespace propseg

#endif  // PROPSEG_ERRORS_H_
