// Copyright (c) 2026, bladeopt authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace bladeopt {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument outside the domain of an operation (bad length, range, topology).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid experiment configuration or override.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// File or directory could not be read, written or parsed.
class IoError : public Error {
 public:
  using Error::Error;
};

/// The evaluator failed persistently or could not be started at all.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

}  // namespace bladeopt
