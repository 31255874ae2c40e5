// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EOS_ERRORS_HPP_
#define EOS_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace eos {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed textual input (TLE, timestamps, JSON, LP files).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Well-formed input that violates a documented invariant or precondition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class TleLengthError : public ParseError {
 public:
  using ParseError::ParseError;
};

class TleChecksumError : public ParseError {
 public:
  using ParseError::ParseError;
};

class TleCatalogMismatchError : public ParseError {
 public:
  using ParseError::ParseError;
};

class PropagationError : public Error {
 public:
  enum class Kind {
    kOutOfValidity,
    kDecayed,
    kDiverged,
    kMeanEccentricity,
    kPerturbedEccentricity,
    kNegativeSemiLatusRectum,
  };

  PropagationError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

// A solver/input combination that is well-formed but not allowed, e.g. the
// exact engine on grouped conflict rows.
class RefusedError : public Error {
 public:
  using Error::Error;
};

}  // namespace eos

#endif  // EOS_ERRORS_HPP_
