/*
 * Copyright 2026 The routefilter Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace routefilter {

/// Broad failure class. The CLI maps each kind onto its exit status.
enum class ErrorKind {
  usage,      // bad flags, bad configuration values
  data,       // malformed or inconsistent input data
  numerical,  // divergence, non-finite values
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(ErrorKind::usage, what) {}
};

class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(ErrorKind::data, what) {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what)
      : Error(ErrorKind::numerical, what) {}
};

/// Malformed input. `position` is a byte offset for document streams and a
/// 1-based line number for line-oriented formats; `record` is the 0-based
/// record index when one is known.
class ParseError : public DataError {
 public:
  ParseError(const std::string& what, std::size_t position, std::size_t record)
      : DataError(what), position_(position), record_(record) {}

  std::size_t position() const noexcept { return position_; }
  std::size_t record() const noexcept { return record_; }

 private:
  std::size_t position_;
  std::size_t record_;
};

class DuplicateKeyError : public DataError {
 public:
  explicit DuplicateKeyError(const std::string& what) : DataError(what) {}
};

/// Step 1 of term selection produced no usable candidate.
class EmptyCandidatesError : public DataError {
 public:
  explicit EmptyCandidatesError(const std::string& what) : DataError(what) {}
};

inline int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::usage:
      return 1;
    case ErrorKind::data:
      return 2;
    case ErrorKind::numerical:
      return 3;
  }
  return 2;
}

}  // namespace routefilter
