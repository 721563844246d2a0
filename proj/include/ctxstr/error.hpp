// Copyright 2026 The ctxstr Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace ctxstr {

// Base of everything the library throws. The CLI maps the two families below
// onto exit codes 1 (bad input) and 2 (runtime / adapter failure).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// --- input problems (exit 1) ---

class ValidationError : public Error {
 public:
  using Error::Error;
};

// Malformed file content. `offset` is the byte position where parsing stopped.
class FormatError : public ValidationError {
 public:
  FormatError(const std::string& what, std::size_t offset)
      : ValidationError(what + " (at byte offset " + std::to_string(offset) + ")"),
        offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class UnsupportedFormatError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class TruncationError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// A caller broke a documented precondition (dimension mismatch, empty set...).
class ContractError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// --- runtime problems (exit 2) ---

class IoError : public Error {
 public:
  using Error::Error;
};

class TransportError : public Error {
 public:
  using Error::Error;
};

// Replay fixture does not hold what the pipeline asked for.
class FixtureError : public Error {
 public:
  using Error::Error;
};

}  // namespace ctxstr
