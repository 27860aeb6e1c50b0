// Copyright 2026 The Retrodiction Authors
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

#include <stdexcept>
#include <string>

namespace retro {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Input violates a structural or physical precondition (bad dimensions,
/// non-Hermitian input, invalid POVM, ...).
class ValidationError : public Error {
   public:
    using Error::Error;
};

class DimensionMismatch : public ValidationError {
   public:
    using ValidationError::ValidationError;
};

class NotHermitian : public ValidationError {
   public:
    NotHermitian(const std::string &what, double asymmetry)
        : ValidationError(what), asymmetry_(asymmetry) {
    }
    /// Measured ||m - m^dag||_F / ||m||_F.
    double asymmetry() const {
        return asymmetry_;
    }

   private:
    double asymmetry_;
};

class NotPSD : public ValidationError {
   public:
    NotPSD(const std::string &what, double min_eigenvalue)
        : ValidationError(what), min_eigenvalue_(min_eigenvalue) {
    }
    double min_eigenvalue() const {
        return min_eigenvalue_;
    }

   private:
    double min_eigenvalue_;
};

class ZeroOperator : public ValidationError {
   public:
    using ValidationError::ValidationError;
};

class InvalidState : public ValidationError {
   public:
    using ValidationError::ValidationError;
};

class InvalidChannel : public ValidationError {
   public:
    using ValidationError::ValidationError;
};

class InvalidPOVM : public ValidationError {
   public:
    using ValidationError::ValidationError;
};

class EmptyEnsemble : public ValidationError {
   public:
    using ValidationError::ValidationError;
};

class NotPure : public ValidationError {
   public:
    using ValidationError::ValidationError;
};

class InvalidDistribution : public ValidationError {
   public:
    using ValidationError::ValidationError;
};

/// Evidence puts weight on an outcome the forward model deems impossible.
class UnsupportedEvidence : public ValidationError {
   public:
    using ValidationError::ValidationError;
};

/// sigma has weight outside the support of the predicted output state.
class SupportViolation : public Error {
   public:
    SupportViolation(const std::string &what, double outside_weight)
        : Error(what), outside_weight_(outside_weight) {
    }
    double outside_weight() const {
        return outside_weight_;
    }

   private:
    double outside_weight_;
};

/// An internal consistency check failed; indicates a bug, not bad input.
class NumericalError : public Error {
   public:
    using Error::Error;
};

class ParseError : public Error {
   public:
    using Error::Error;
};

/// A file could not be read or written.
class IoError : public Error {
   public:
    using Error::Error;
};

/// The signature test and the brute-force oracle reached different verdicts.
class OracleDisagreement : public NumericalError {
   public:
    using NumericalError::NumericalError;
};

}  // namespace retro
