// Copyright 2026 the spider authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace spider {

// Base class for all spider errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// API misuse: nested begin_trace, probe outside a trace while armed, etc.
class UsageError : public Error {
 public:
  using Error::Error;
};

// Malformed input files or messages. The message names the offending field.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Duplicate service id or otherwise invalid registration.
class RegistrationError : public Error {
 public:
  using Error::Error;
};

// Dispatch-level failure (cascade depth overflow).
class DispatchError : public Error {
 public:
  using Error::Error;
};

// A handler touched a state object outside its declared read/write sets.
class StoreAccessError : public Error {
 public:
  using Error::Error;
};

// Raised by handlers for malformed payloads. Recorded in the dispatch
// result, never propagated out of dispatch.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Invalid campaign / sweep / CLI configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Decode or re-execution of a recorded stream did not reproduce the
// recorded result.
class ReplayError : public Error {
 public:
  using Error::Error;
};

// A fuzzing execution failed (e.g. cascade overflow); the input is
// discarded and the campaign continues.
class ExecutionError : public Error {
 public:
  using Error::Error;
};

// Threshold or classification input was unusable (too few samples/points).
class CalibrationError : public Error {
 public:
  using Error::Error;
};

}  // namespace spider
