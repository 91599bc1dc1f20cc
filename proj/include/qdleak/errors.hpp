// Copyright 2026 The qdleak Authors
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

#ifndef QDLEAK_ERRORS_HPP
#define QDLEAK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qdleak {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Bad argument: out-of-range index, mismatched shapes, non-Hermitian input.
class ArgumentError : public Error {
   public:
    using Error::Error;
};

/// A requested dimension exceeds the configured ceiling.
class DimensionLimitError : public Error {
   public:
    using Error::Error;
};

/// Rank-deficient or otherwise degenerate input (e.g. p = q = 0).
class DegeneracyError : public Error {
   public:
    using Error::Error;
};

/// A caller-side precondition on the scenario was violated (e.g. asking for
/// the decoherence factor of an accepted-basis round).
class ContractError : public Error {
   public:
    using Error::Error;
};

/// A numerical invariant broke during a run (non-unitary link, norm drift).
class NumericalContractError : public Error {
   public:
    using Error::Error;
};

/// Malformed configuration file or command-line value.
class ConfigError : public Error {
   public:
    using Error::Error;
};

class IoError : public Error {
   public:
    using Error::Error;
};

}  // namespace qdleak

#endif  // QDLEAK_ERRORS_HPP
