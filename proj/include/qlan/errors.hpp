// Copyright 2026 The qlan Authors
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

#ifndef QLAN_ERRORS_HPP
#define QLAN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qlan {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
    virtual const char *kind() const noexcept = 0;
};

/// Malformed input: non-square or non-Hermitian matrices, mismatched block structures.
class ValidationError : public Error {
   public:
    using Error::Error;
    const char *kind() const noexcept override {
        return "validation";
    }
};

/// Input outside the mathematical domain of an operation.
class DomainError : public Error {
   public:
    using Error::Error;
    const char *kind() const noexcept override {
        return "domain";
    }
};

/// A truncated Fock space is too small for the requested accuracy.
class TruncationError : public Error {
   public:
    using Error::Error;
    const char *kind() const noexcept override {
        return "truncation";
    }
};

/// Quadrature or Monte Carlo accuracy below what was requested.
class AccuracyError : public Error {
   public:
    using Error::Error;
    const char *kind() const noexcept override {
        return "accuracy";
    }
};

}  // namespace qlan

#endif
