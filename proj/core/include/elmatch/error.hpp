/*
 * Copyright 2026 The elmatch Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef ELMATCH_ERROR_HPP
#define ELMATCH_ERROR_HPP

#include <stdexcept>
#include <string>

namespace elmatch {

enum class ErrorKind {
  TooFewPoints,
  DegenerateSample,
  OutOfRange,
  NoDensity,
  PreconditionViolated,
  UnsupportedPriorClass,
  ParseError,
  InvalidArgument,
  Io,
};

const char* to_string(ErrorKind kind) noexcept;

/**
 * Single exception type for the library. The kind tells callers (and the
 * CLI exit-code mapping) which contract was broken.
 */
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

/// ParseError carrying the byte offset into the offending input.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t position)
      : Error(ErrorKind::ParseError,
              what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

} // namespace elmatch

#endif
