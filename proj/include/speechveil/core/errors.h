// Copyright 2026 The speechveil Authors.
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

#ifndef SPEECHVEIL_CORE_ERRORS_H_
#define SPEECHVEIL_CORE_ERRORS_H_

#include <stdexcept>
#include <string>

namespace speechveil {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input violates a documented precondition or invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class BoundsError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// A metric was asked for on an input where it is undefined (e.g. empty).
class UndefinedInputError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Unusable configuration: unreadable file, bad option, insufficient data.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class PromptError : public Error {
 public:
  using Error::Error;
};

// The LLM reply is not fenced the way the prompt demanded.
class ParseError : public Error {
 public:
  using Error::Error;
};

// The fenced reply cannot be aligned against the source transcript.
class AlignmentError : public Error {
 public:
  using Error::Error;
};

// Retryable failure talking to a backend (connection, timeout, 5xx).
class TransportError : public Error {
 public:
  using Error::Error;
};

// Non-retryable failure reported by, or detected in the output of, a backend.
class ProtocolError : public Error {
 public:
  ProtocolError(const std::string& what, std::string code = "protocol_error")
      : Error(what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

class NotFoundError : public ProtocolError {
 public:
  explicit NotFoundError(const std::string& what)
      : ProtocolError(what, "not_found") {}
};

// Final failure of a backend call after the retry budget is spent.
class BackendError : public Error {
 public:
  BackendError(const std::string& what, std::string kind, int attempts)
      : Error(what), kind_(std::move(kind)), attempts_(attempts) {}
  const std::string& kind() const { return kind_; }
  int attempts() const { return attempts_; }

 private:
  std::string kind_;
  int attempts_;
};

}  // namespace speechveil

#endif  // SPEECHVEIL_CORE_ERRORS_H_
