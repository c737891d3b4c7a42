// Copyright 2026 The qmeasure developers

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file errors.hpp
 * Error taxonomy. Every class carries the process exit code the CLI maps
 * it to: 2 for input problems, 3 for refused exponential work, 4 for
 * arguments that break an operation's contract.
 */
#ifndef QMEASURE_ERRORS_HPP
#define QMEASURE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qmeasure {

class Error : public std::runtime_error {
  public:
    Error(std::string message, int exit_code)
        : std::runtime_error(std::move(message)), exit_code_(exit_code) {}
    int exit_code() const noexcept { return exit_code_; }

  private:
    int exit_code_;
};

/// Input text that is not even well-formed (unparseable JSON, bad numbers).
class MalformedInputError : public Error {
  public:
    explicit MalformedInputError(const std::string &message)
        : Error(message, 2) {}
};

/// Well-formed input with wrong shape: missing/extra fields, bad types,
/// unresolved labels.
class SchemaError : public Error {
  public:
    explicit SchemaError(const std::string &message) : Error(message, 2) {}
};

/// Structurally valid input whose values violate a declared invariant
/// (non-Hermitian matrix, unnormalized measure, inconsistent table).
class InvariantError : public Error {
  public:
    explicit InvariantError(const std::string &message) : Error(message, 2) {}
};

/// An operation refused because it would exceed an enumeration cap.
class CapacityError : public Error {
  public:
    explicit CapacityError(const std::string &message) : Error(message, 3) {}
};

/// Arguments outside an operation's domain (mismatched sample spaces,
/// empty event where a nonempty one is required, ...).
class DomainError : public Error {
  public:
    explicit DomainError(const std::string &message) : Error(message, 4) {}
};

/// The requested mode does not apply to this input (e.g. history
/// amplitudes for a mixed initial state).
class UnsupportedModeError : public DomainError {
  public:
    explicit UnsupportedModeError(const std::string &message)
        : DomainError(message) {}
};

/// Input that is degenerate rather than ill-formed (e.g. a table whose
/// total measure is exactly zero).
class DegenerateInputError : public DomainError {
  public:
    explicit DegenerateInputError(const std::string &message)
        : DomainError(message) {}
};

} // namespace qmeasure

#endif // QMEASURE_ERRORS_HPP
