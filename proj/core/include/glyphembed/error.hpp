// Copyright 2026 The glyphembed Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace glyphembed {

// Base of every error thrown by the library. The CLI maps these to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed text input. `line()` is 1-based; 0 means "whole file".
class FormatError : public Error {
 public:
  FormatError(const std::string& source, std::size_t line, const std::string& what)
      : Error(source + (line ? ":" + std::to_string(line) : std::string()) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class MissingGlyph : public Error {
 public:
  explicit MissingGlyph(char32_t codepoint);
  char32_t codepoint() const noexcept { return codepoint_; }

 private:
  char32_t codepoint_;
};

class DegenerateInput : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(std::size_t expected, std::size_t actual)
      : Error("dimension mismatch: expected " + std::to_string(expected) + ", got " +
              std::to_string(actual)) {}
};

class UnknownChar : public Error {
 public:
  explicit UnknownChar(char32_t codepoint);
};

class SelfMapping : public Error {
 public:
  SelfMapping(const std::string& source, std::size_t line, const std::string& word)
      : Error(source + ":" + std::to_string(line) + ": word maps to itself: '" + word + "'"),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class SequenceTooShort : public Error {
 public:
  SequenceTooShort(std::size_t length, std::size_t window)
      : Error("sequence of length " + std::to_string(length) +
              " is shorter than the convolution width " + std::to_string(window)) {}
};

// Non-finite loss during training.
class TrainingDiverged : public Error {
 public:
  using Error::Error;
};

}  // namespace glyphembed
